"""Command-line front end: estimate, compare, hardware, regions, stats.

Output formats: ``text`` (human tables), ``json`` (single document, same
fields as the HTTP service), ``csv`` (header row first). Exit codes:

* 0 success
* 2 flag parse errors and unusable dataset/config files
* 3 unknown hardware or region (message carries closest matches)
* 4 out-of-range arguments (and empty comparisons, mirroring HTTP 422)
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from typing import Any, Sequence

from . import catalog as cat
from . import engine, reporting
from .errors import (
    ConfigurationError,
    EmptyCatalogError,
    EmptyComparisonError,
    IngestError,
    NotFoundError,
    RangeError,
    TrainCarbonError,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NOT_FOUND = 3
EXIT_RANGE = 4

FORMATS = ("text", "json", "csv")


def _positive_int(raw: str) -> int:
    try:
        value = int(raw)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {raw!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {raw}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="traincarbon",
        description=(
            "Estimate the CO2eq emissions of training ML models from hardware "
            "power draw, training time, datacenter region, and provider offsets."
        ),
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--regions-file", default=None, help="Override the shipped regions.csv."
    )
    common.add_argument(
        "--hardware-file", default=None, help="Override the shipped hardware.csv."
    )
    common.add_argument(
        "--geo-file", default=None, help="Override the shipped geo.csv (stats only)."
    )
    common.add_argument(
        "--format",
        choices=FORMATS,
        default="text",
        help="Output format (default: text).",
    )

    workload = argparse.ArgumentParser(add_help=False)
    workload.add_argument("--hardware", required=True, help='Device name, e.g. "Tesla V100".')
    workload.add_argument(
        "--count", type=_positive_int, default=1, help="Number of devices (default: 1)."
    )
    workload.add_argument("--hours", type=float, required=True, help="Wall-clock training hours.")
    workload.add_argument(
        "--pue",
        type=float,
        default=None,
        help="PUE override; defaults to the region's datacenter PUE.",
    )
    workload.add_argument(
        "--utilization",
        type=float,
        default=1.0,
        help="Fraction of TDP actually drawn, in (0, 1] (default: 1.0).",
    )

    sub = parser.add_subparsers(dest="command", required=True)

    p_estimate = sub.add_parser(
        "estimate",
        parents=[common, workload],
        help="Estimate emissions of one training run in one region.",
    )
    p_estimate.add_argument(
        "--provider", required=True, choices=[p.value for p in cat.Provider]
    )
    p_estimate.add_argument("--region", required=True, help='Region code, e.g. "ca-central-1".')
    p_estimate.set_defaults(handler=cmd_estimate)

    p_compare = sub.add_parser(
        "compare",
        parents=[common, workload],
        help="Rank every region by the emissions this run would produce there.",
    )
    p_compare.add_argument(
        "--provider",
        default=None,
        choices=[p.value for p in cat.Provider],
        help="Restrict the comparison to one provider.",
    )
    p_compare.add_argument(
        "--top", type=_positive_int, default=None, help="Show only the best N regions."
    )
    p_compare.add_argument(
        "--metric",
        choices=[m.value for m in engine.ComparisonMetric],
        default="gross",
        help="Ranking metric (default: gross).",
    )
    p_compare.set_defaults(handler=cmd_compare)

    p_hardware = sub.add_parser(
        "hardware", parents=[common], help="List known hardware profiles."
    )
    p_hardware.add_argument(
        "--efficiency", action="store_true", help="Append GFLOPS/W columns."
    )
    p_hardware.set_defaults(handler=cmd_hardware)

    p_regions = sub.add_parser(
        "regions", parents=[common], help="List known provider regions."
    )
    p_regions.add_argument(
        "--provider", default=None, choices=[p.value for p in cat.Provider]
    )
    p_regions.set_defaults(handler=cmd_regions)

    p_stats = sub.add_parser(
        "stats", parents=[common], help="Grid intensity statistics by geographic region."
    )
    p_stats.set_defaults(handler=cmd_stats)

    return parser


def _load_catalog(args: argparse.Namespace) -> cat.DataCatalog:
    return cat.load_catalog(args.regions_file, args.hardware_file)


def _emit_json(doc: dict[str, Any]) -> None:
    print(json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False))


def _emit_csv(header: Sequence[str], rows: Sequence[Sequence[Any]]) -> None:
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)


def _emit_table(header: Sequence[str], rows: Sequence[Sequence[Any]]) -> None:
    cells = [[str(v) for v in row] for row in rows]
    widths = [len(h) for h in header]
    for row in cells:
        for i, v in enumerate(row):
            widths[i] = max(widths[i], len(v))
    print("  ".join(h.ljust(widths[i]) for i, h in enumerate(header)).rstrip())
    for row in cells:
        print("  ".join(v.ljust(widths[i]) for i, v in enumerate(row)).rstrip())


def _num(value: float) -> str:
    """Compact numeric text for tables: 20 not 20.0, but 736.6 stays."""
    return f"{value:g}"


# ---------------------------------------------------------------------------
# Subcommand handlers
# ---------------------------------------------------------------------------


def cmd_estimate(args: argparse.Namespace) -> int:
    catalog = _load_catalog(args)
    request = engine.EstimateRequest(
        provider=cat.Provider(args.provider),
        region_code=args.region,
        hardware_name=args.hardware,
        hours=args.hours,
        device_count=args.count,
        pue_override=args.pue,
        utilization=args.utilization,
    )
    estimate = engine.estimate_emissions(catalog, request)
    doc = reporting.estimate_dict(estimate, catalog.version)

    if args.format == "json":
        _emit_json(doc)
    elif args.format == "csv":
        header = [
            "provider",
            "region_code",
            "hardware_name",
            "device_count",
            "hours",
            "pue_override",
            "utilization",
            "device_kwh",
            "overhead_kwh",
            "total_kwh",
            "gross_gco2eq",
            "offset_gco2eq",
            "net_gco2eq",
            "dataset_version",
        ]
        row = [
            doc["request"]["provider"],
            doc["request"]["region_code"],
            doc["request"]["hardware_name"],
            doc["request"]["device_count"],
            _num(doc["request"]["hours"]),
            "" if doc["request"]["pue_override"] is None else _num(doc["request"]["pue_override"]),
            _num(doc["request"]["utilization"]),
            doc["energy"]["device_kwh"],
            doc["energy"]["overhead_kwh"],
            doc["energy"]["total_kwh"],
            doc["gross_gco2eq"],
            doc["offset_gco2eq"],
            doc["net_gco2eq"],
            doc["dataset_version"],
        ]
        _emit_csv(header, [row])
    else:
        region = estimate.region
        pue = request.pue_override if request.pue_override is not None else region.default_pue
        print(f"Region:          {region.provider.value}/{region.region_code} "
              f"({region.city}, {region.country})")
        print(f"Grid intensity:  {_num(region.intensity.value)} gCO2eq/kWh")
        print(f"Hardware:        {estimate.request.hardware_name} x {request.device_count}, "
              f"{_num(request.hours)} h, utilization {_num(request.utilization)}")
        print(f"PUE applied:     {_num(pue)}")
        print(f"Energy:          {doc['energy']['total_kwh']} kWh "
              f"(devices {doc['energy']['device_kwh']} + overhead {doc['energy']['overhead_kwh']})")
        print(f"Gross emissions: {doc['gross_gco2eq']} g "
              f"({reporting.round_kg(estimate.gross_gco2eq / 1000.0)} kg)")
        print(f"Offsets:         {doc['offset_gco2eq']} g "
              f"(provider offset ratio {_num(region.offset_ratio)})")
        print(f"Net emissions:   {doc['net_gco2eq']} g "
              f"({reporting.round_kg(estimate.net_gco2eq / 1000.0)} kg)")
        print(f"Dataset:         {catalog.version}")
    return EXIT_OK


def cmd_compare(args: argparse.Namespace) -> int:
    catalog = _load_catalog(args)
    workload = engine.Workload(
        hardware_name=args.hardware,
        hours=args.hours,
        device_count=args.count,
        pue_override=args.pue,
        utilization=args.utilization,
    )
    provider = cat.Provider(args.provider) if args.provider else None
    comparison = engine.compare_regions(
        catalog, workload, provider=provider, metric=engine.ComparisonMetric(args.metric)
    )
    doc = reporting.comparison_dict(comparison, catalog.version)
    results = doc["results"][: args.top] if args.top else doc["results"]

    header = [
        "rank",
        "provider",
        "region_code",
        "country",
        "city",
        "intensity_gco2_per_kwh",
        "total_kwh",
        "gross_gco2eq",
        "offset_gco2eq",
        "net_gco2eq",
    ]
    rows = [
        [
            r["rank"],
            r["provider"],
            r["region_code"],
            r["country"],
            r["city"],
            _num(r["intensity_gco2_per_kwh"]),
            r["total_kwh"],
            r["gross_gco2eq"],
            r["offset_gco2eq"],
            r["net_gco2eq"],
        ]
        for r in results
    ]

    if args.format == "json":
        doc["results"] = results
        _emit_json(doc)
    elif args.format == "csv":
        _emit_csv(header, rows)
    else:
        _emit_table(header, rows)
        ratio = doc["worst_best_ratio"]
        if ratio is None:
            print(f"worst/best {doc['metric']} ratio: undefined (best is 0)")
        else:
            print(f"worst/best {doc['metric']} ratio: {ratio}")
        print(f"dataset: {doc['dataset_version']}")
    return EXIT_OK


def cmd_hardware(args: argparse.Namespace) -> int:
    catalog = _load_catalog(args)
    profiles = cat.list_hardware(catalog)
    docs = [
        reporting.hardware_dict(
            p, engine.hardware_efficiency(p) if args.efficiency else None
        )
        for p in profiles
    ]
    if args.format == "json":
        _emit_json({"hardware": docs, "dataset_version": catalog.version})
        return EXIT_OK

    header = ["name", "kind", "tdp_watts", "tflops32", "tflops16"]
    if args.efficiency:
        header += ["gflops32_per_watt", "gflops16_per_watt"]
    rows = []
    for d in docs:
        row = [d["name"], d["kind"], _num(d["tdp_watts"]), d["tflops32"], d["tflops16"]]
        if args.efficiency:
            row += [d["gflops32_per_watt"], d["gflops16_per_watt"]]
        rows.append(row)
    if args.format == "csv":
        _emit_csv(header, rows)
    else:
        _emit_table(header, rows)
    return EXIT_OK


def cmd_regions(args: argparse.Namespace) -> int:
    catalog = _load_catalog(args)
    provider = cat.Provider(args.provider) if args.provider else None
    regions = cat.list_regions(catalog, provider)
    if args.format == "json":
        _emit_json(
            {
                "regions": [reporting.region_dict(r) for r in regions],
                "dataset_version": catalog.version,
            }
        )
        return EXIT_OK

    header = list(cat.REGIONS_HEADER)
    rows = [
        [
            r.provider.value,
            r.region_code,
            r.country,
            r.city,
            _num(r.intensity.value),
            _num(r.offset_ratio),
            _num(r.default_pue),
            r.source,
        ]
        for r in regions
    ]
    if args.format == "csv":
        _emit_csv(header, rows)
    else:
        _emit_table(header, rows)
    return EXIT_OK


def cmd_stats(args: argparse.Namespace) -> int:
    catalog = _load_catalog(args)
    geo_map = cat.load_geo_map(args.geo_file)
    stats = engine.regional_stats(catalog, geo_map)
    doc = reporting.stats_dict(stats, catalog.version)
    if args.format == "json":
        _emit_json(doc)
        return EXIT_OK

    header = [
        "geo_region",
        "count",
        "min_gco2_per_kwh",
        "max_gco2_per_kwh",
        "mean_gco2_per_kwh",
        "median_gco2_per_kwh",
    ]
    rows = [
        [
            s["geo_region"],
            s["count"],
            _num(s["min_gco2_per_kwh"]),
            _num(s["max_gco2_per_kwh"]),
            s["mean_gco2_per_kwh"],
            _num(s["median_gco2_per_kwh"]),
        ]
        for s in doc["stats"]
    ]
    if args.format == "csv":
        _emit_csv(header, rows)
    else:
        _emit_table(header, rows)
    return EXIT_OK


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(list(argv) if argv is not None else None)
    try:
        return args.handler(args)
    except NotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_FOUND
    except (RangeError, EmptyComparisonError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RANGE
    except (IngestError, EmptyCatalogError, ConfigurationError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except TrainCarbonError as exc:  # safety net: never exit 0 on an error
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
