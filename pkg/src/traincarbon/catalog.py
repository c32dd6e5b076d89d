"""Region and hardware catalog: domain types, CSV ingestion, validation, lookup.

The catalog is built from three CSV files shipped with the package (and
overridable by path):

* ``regions.csv``  - one cloud provider region per row, with the carbon
  intensity of the grid it is assumed to draw from (gCO2eq/kWh), the
  fraction of gross emissions the provider neutralizes through
  RECs/offsets, and the default datacenter PUE.
* ``hardware.csv`` - one compute device per row, with TDP in watts and
  peak FP32/FP16 throughput in TFLOPS.
* ``geo.csv``      - country to geographic-region map used for grouped
  intensity statistics.

All loaded data is validated and frozen into an immutable
:class:`DataCatalog`; lookups and listings are deterministic.
"""

from __future__ import annotations

import csv
import hashlib
import io
import math
import os
from dataclasses import dataclass, field
from enum import Enum
from importlib import resources
from pathlib import Path
from typing import BinaryIO, Iterable, Mapping

from .errors import (
    DuplicateKeyError,
    EmptyCatalogError,
    IngestError,
    NotFoundError,
    RangeError,
)

# Revision identifier of the shipped datasets (upstream data commit).
DATASET_VERSION = "2019-e692e28"

# Environment variable naming a directory with override CSVs.
DATA_DIR_ENV = "TRAINCARBON_DATA_DIR"

REGIONS_HEADER = (
    "provider",
    "region_code",
    "country",
    "city",
    "intensity_gco2_per_kwh",
    "offset_ratio",
    "default_pue",
    "source",
)
HARDWARE_HEADER = ("name", "kind", "tdp_watts", "tflops32", "tflops16")
GEO_HEADER = ("country", "geo_region")

# Sanity ceiling for grid intensity; real grids stay well below this.
MAX_INTENSITY = 2000.0

SUGGESTION_LIMIT = 5


class Provider(str, Enum):
    """Cloud providers covered by the shipped region dataset."""

    GCP = "gcp"
    AWS = "aws"
    AZURE = "azure"


class HardwareKind(str, Enum):
    GPU = "gpu"
    TPU = "tpu"
    CPU = "cpu"
    EMBEDDED = "embedded"


@dataclass(frozen=True)
class CarbonIntensity:
    """Grid carbon intensity in grams CO2eq per kilowatt-hour."""

    value: float


@dataclass(frozen=True)
class GridRegion:
    """One cloud provider region and its grid/offset/PUE characteristics.

    ``offset_ratio`` is the fraction of gross emissions neutralized by the
    provider's RECs/offsets; ``default_pue`` is applied when a request does
    not override PUE.
    """

    provider: Provider
    region_code: str
    country: str
    city: str
    intensity: CarbonIntensity
    offset_ratio: float
    default_pue: float
    source: str = ""


@dataclass(frozen=True)
class HardwareProfile:
    """One compute device: rated power draw and peak throughput."""

    name: str
    kind: HardwareKind
    tdp_watts: float
    tflops32: float
    tflops16: float


@dataclass(frozen=True)
class DataCatalog:
    """Validated, immutable collection of regions and hardware profiles.

    Construct through :func:`validate_catalog`; direct construction skips
    invariant checks. Safe to share across threads.
    """

    regions: tuple[GridRegion, ...]
    hardware: tuple[HardwareProfile, ...]
    version: str
    _region_index: Mapping[tuple[Provider, str], GridRegion] = field(
        init=False, repr=False, compare=False, default=None  # type: ignore[assignment]
    )
    _hardware_index: Mapping[str, HardwareProfile] = field(
        init=False, repr=False, compare=False, default=None  # type: ignore[assignment]
    )

    def __post_init__(self) -> None:
        object.__setattr__(
            self,
            "_region_index",
            {(r.provider, r.region_code): r for r in self.regions},
        )
        object.__setattr__(
            self,
            "_hardware_index",
            {normalize_hardware_name(h.name): h for h in self.hardware},
        )

    def providers(self) -> tuple[Provider, ...]:
        """Providers present in the catalog, sorted by value."""
        return tuple(sorted({r.provider for r in self.regions}, key=lambda p: p.value))

    def countries(self) -> tuple[str, ...]:
        return tuple(sorted({r.country for r in self.regions}))


# ---------------------------------------------------------------------------
# Normalization
# ---------------------------------------------------------------------------


def normalize_region_code(code: str) -> str:
    """Lowercase a region code; surrounding whitespace is stripped."""
    return code.strip().lower()


def normalize_hardware_name(name: str) -> str:
    """Matching key for hardware names: casefolded, inner whitespace collapsed."""
    return " ".join(name.split()).casefold()


# ---------------------------------------------------------------------------
# Per-entity invariant checks (shared by loaders and validate_catalog)
# ---------------------------------------------------------------------------


def _check_finite(value: float, field_name: str) -> None:
    if not math.isfinite(value):
        raise RangeError(f"{field_name} must be finite, got {value!r}", field=field_name)


def check_region(region: GridRegion) -> None:
    """Raise :class:`RangeError` on the first invariant the region violates."""
    code = region.region_code
    if not code or code != code.lower() or any(c.isspace() for c in code):
        raise RangeError(
            f"region_code must be non-empty lowercase without whitespace, got {code!r}",
            field="region_code",
        )
    _check_finite(region.intensity.value, "intensity_gco2_per_kwh")
    if not 0.0 <= region.intensity.value <= MAX_INTENSITY:
        raise RangeError(
            f"intensity must be in [0, {MAX_INTENSITY:g}] gCO2eq/kWh, "
            f"got {region.intensity.value!r}",
            field="intensity_gco2_per_kwh",
        )
    _check_finite(region.offset_ratio, "offset_ratio")
    if not 0.0 <= region.offset_ratio <= 1.0:
        raise RangeError(
            f"offset_ratio must be in [0, 1], got {region.offset_ratio!r}",
            field="offset_ratio",
        )
    _check_finite(region.default_pue, "default_pue")
    if region.default_pue < 1.0:
        raise RangeError(
            f"default_pue must be >= 1.0, got {region.default_pue!r}",
            field="default_pue",
        )


def check_hardware(profile: HardwareProfile) -> None:
    """Raise :class:`RangeError` on the first invariant the profile violates."""
    if not profile.name.strip():
        raise RangeError("hardware name must be non-empty", field="name")
    _check_finite(profile.tdp_watts, "tdp_watts")
    if profile.tdp_watts <= 0.0:
        raise RangeError(
            f"tdp_watts must be > 0, got {profile.tdp_watts!r}", field="tdp_watts"
        )
    for field_name, value in (("tflops32", profile.tflops32), ("tflops16", profile.tflops16)):
        _check_finite(value, field_name)
        if value < 0.0:
            raise RangeError(f"{field_name} must be >= 0, got {value!r}", field=field_name)
    if profile.tflops32 == 0.0 and profile.tflops16 == 0.0:
        raise RangeError(
            "tflops32 and tflops16 must not both be zero", field="tflops32"
        )


# ---------------------------------------------------------------------------
# CSV ingestion
# ---------------------------------------------------------------------------


def _csv_rows(
    source: BinaryIO, expected_header: tuple[str, ...]
) -> Iterable[tuple[int, list[str]]]:
    """Yield (line_number, cells) for each data row, enforcing the header."""
    text = io.TextIOWrapper(source, encoding="utf-8-sig", newline="")
    reader = csv.reader(text)
    try:
        header = next(reader)
    except StopIteration:
        raise IngestError(
            f"missing header; expected {','.join(expected_header)}", row=1
        ) from None
    if tuple(cell.strip() for cell in header) != expected_header:
        raise IngestError(
            f"unexpected header {','.join(header)!r}; "
            f"expected {','.join(expected_header)}",
            row=1,
        )
    for cells in reader:
        if not cells or (len(cells) == 1 and not cells[0].strip()):
            continue  # blank line
        if len(cells) != len(expected_header):
            raise IngestError(
                f"expected {len(expected_header)} columns, got {len(cells)}",
                row=reader.line_num,
            )
        yield reader.line_num, [cell.strip() for cell in cells]


def _parse_float(raw: str, column: str, row: int) -> float:
    # Schema uses '.' decimals with no thousands separators; reject the
    # underscore digit grouping float() would otherwise accept.
    if not raw or "_" in raw:
        raise IngestError(f"unparsable number {raw!r}", row=row, column=column)
    try:
        return float(raw)
    except ValueError:
        raise IngestError(f"unparsable number {raw!r}", row=row, column=column) from None


def _parse_enum(enum_cls, raw: str, column: str, row: int):
    try:
        return enum_cls(raw.lower())
    except ValueError:
        valid = ", ".join(member.value for member in enum_cls)
        raise IngestError(
            f"unknown {column} {raw!r}; expected one of {valid}", row=row, column=column
        ) from None


def load_regions(source: BinaryIO) -> tuple[GridRegion, ...]:
    """Parse a regions CSV stream into GridRegion rows.

    Region codes are normalized to lowercase. Raises :class:`IngestError`
    naming row and column for malformed or out-of-range values, and
    :class:`DuplicateKeyError` when (provider, region_code) repeats.
    """
    regions: list[GridRegion] = []
    seen: dict[tuple[Provider, str], int] = {}
    for row, cells in _csv_rows(source, REGIONS_HEADER):
        provider = _parse_enum(Provider, cells[0], "provider", row)
        region = GridRegion(
            provider=provider,
            region_code=normalize_region_code(cells[1]),
            country=cells[2],
            city=cells[3],
            intensity=CarbonIntensity(
                _parse_float(cells[4], "intensity_gco2_per_kwh", row)
            ),
            offset_ratio=_parse_float(cells[5], "offset_ratio", row),
            default_pue=_parse_float(cells[6], "default_pue", row),
            source=cells[7],
        )
        try:
            check_region(region)
        except RangeError as exc:
            raise IngestError(str(exc), row=row, column=exc.field) from exc
        key = (region.provider, region.region_code)
        if key in seen:
            raise DuplicateKeyError(
                f"duplicate region ({provider.value}, {region.region_code}); "
                f"first seen at row {seen[key]}",
                row=row,
                column="region_code",
            )
        seen[key] = row
        regions.append(region)
    return tuple(regions)


def load_hardware(source: BinaryIO) -> tuple[HardwareProfile, ...]:
    """Parse a hardware CSV stream into HardwareProfile rows."""
    profiles: list[HardwareProfile] = []
    seen: dict[str, int] = {}
    for row, cells in _csv_rows(source, HARDWARE_HEADER):
        profile = HardwareProfile(
            name=cells[0],
            kind=_parse_enum(HardwareKind, cells[1], "kind", row),
            tdp_watts=_parse_float(cells[2], "tdp_watts", row),
            tflops32=_parse_float(cells[3], "tflops32", row),
            tflops16=_parse_float(cells[4], "tflops16", row),
        )
        try:
            check_hardware(profile)
        except RangeError as exc:
            raise IngestError(str(exc), row=row, column=exc.field) from exc
        key = normalize_hardware_name(profile.name)
        if key in seen:
            raise DuplicateKeyError(
                f"duplicate hardware name {profile.name!r}; first seen at row {seen[key]}",
                row=row,
                column="name",
            )
        seen[key] = row
        profiles.append(profile)
    return tuple(profiles)


def load_geo(source: BinaryIO) -> dict[str, str]:
    """Parse a country -> geo_region CSV stream."""
    mapping: dict[str, str] = {}
    for row, cells in _csv_rows(source, GEO_HEADER):
        country, geo_region = cells
        if not country or not geo_region:
            raise IngestError("country and geo_region must be non-empty", row=row)
        if country in mapping:
            raise DuplicateKeyError(
                f"duplicate country {country!r}", row=row, column="country"
            )
        mapping[country] = geo_region
    return mapping


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------


def validate_catalog(
    regions: Iterable[GridRegion],
    hardware: Iterable[HardwareProfile],
    version: str = DATASET_VERSION,
) -> DataCatalog:
    """Check every invariant and freeze the collections into a DataCatalog.

    Total: every input either yields a catalog or raises a structured
    error naming the first offending entity.
    """
    regions = tuple(regions)
    hardware = tuple(hardware)
    if not regions:
        raise EmptyCatalogError("catalog needs at least one region")
    if not hardware:
        raise EmptyCatalogError("catalog needs at least one hardware profile")

    seen_regions: set[tuple[Provider, str]] = set()
    for region in regions:
        try:
            check_region(region)
        except RangeError as exc:
            raise RangeError(
                f"region {region.provider.value}/{region.region_code}: {exc}",
                field=exc.field,
            ) from exc
        key = (region.provider, region.region_code)
        if key in seen_regions:
            raise DuplicateKeyError(
                f"duplicate region ({region.provider.value}, {region.region_code})"
            )
        seen_regions.add(key)

    seen_hardware: set[str] = set()
    for profile in hardware:
        try:
            check_hardware(profile)
        except RangeError as exc:
            raise RangeError(f"hardware {profile.name!r}: {exc}", field=exc.field) from exc
        key = normalize_hardware_name(profile.name)
        if key in seen_hardware:
            raise DuplicateKeyError(f"duplicate hardware name {profile.name!r}")
        seen_hardware.add(key)

    return DataCatalog(regions=regions, hardware=hardware, version=version)


# ---------------------------------------------------------------------------
# Lookup and listing
# ---------------------------------------------------------------------------


def _suggest(query: str, candidates: Iterable[tuple[str, str]]) -> tuple[str, ...]:
    """Nearest (match_key, display) candidates by shared prefix with ``query``.

    Ties break alphabetically; up to SUGGESTION_LIMIT display names return.
    """

    def shared_prefix(a: str, b: str) -> int:
        n = 0
        for ca, cb in zip(a, b):
            if ca != cb:
                break
            n += 1
        return n

    ranked = sorted(candidates, key=lambda c: (-shared_prefix(query, c[0]), c[0]))
    return tuple(display for _key, display in ranked[:SUGGESTION_LIMIT])


def lookup_region(catalog: DataCatalog, provider: Provider, region_code: str) -> GridRegion:
    """Exact match on provider and case-normalized region code."""
    code = normalize_region_code(region_code)
    region = catalog._region_index.get((provider, code))
    if region is None:
        candidates = [
            (r.region_code, r.region_code)
            for r in catalog.regions
            if r.provider == provider
        ]
        if not candidates:
            candidates = [(r.region_code, r.region_code) for r in catalog.regions]
        raise NotFoundError(
            f"unknown region {region_code!r} for provider {provider.value}",
            suggestions=_suggest(code, candidates),
        )
    return region


def lookup_hardware(catalog: DataCatalog, name: str) -> HardwareProfile:
    """Case-insensitive exact match on hardware name."""
    profile = catalog._hardware_index.get(normalize_hardware_name(name))
    if profile is None:
        raise NotFoundError(
            f"unknown hardware {name!r}",
            suggestions=_suggest(
                normalize_hardware_name(name),
                [(normalize_hardware_name(h.name), h.name) for h in catalog.hardware],
            ),
        )
    return profile


def list_regions(
    catalog: DataCatalog, provider: Provider | None = None
) -> tuple[GridRegion, ...]:
    """Regions ordered by (provider, region_code), optionally one provider."""
    regions = catalog.regions
    if provider is not None:
        regions = tuple(r for r in regions if r.provider == provider)
    return tuple(sorted(regions, key=lambda r: (r.provider.value, r.region_code)))


def list_hardware(catalog: DataCatalog) -> tuple[HardwareProfile, ...]:
    """Hardware profiles ordered by name (case-insensitive)."""
    return tuple(sorted(catalog.hardware, key=lambda h: normalize_hardware_name(h.name)))


# ---------------------------------------------------------------------------
# Serialization (inverse of the loaders)
# ---------------------------------------------------------------------------


def _fmt(value: float) -> str:
    """Shortest decimal text that parses back to the identical float."""
    return repr(value)


def dump_regions(regions: Iterable[GridRegion]) -> str:
    """Render regions as CSV text; load_regions(dump_regions(r)) == r."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(REGIONS_HEADER)
    for r in regions:
        writer.writerow(
            [
                r.provider.value,
                r.region_code,
                r.country,
                r.city,
                _fmt(r.intensity.value),
                _fmt(r.offset_ratio),
                _fmt(r.default_pue),
                r.source,
            ]
        )
    return out.getvalue()


def dump_hardware(hardware: Iterable[HardwareProfile]) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(HARDWARE_HEADER)
    for h in hardware:
        writer.writerow(
            [h.name, h.kind.value, _fmt(h.tdp_watts), _fmt(h.tflops32), _fmt(h.tflops16)]
        )
    return out.getvalue()


# ---------------------------------------------------------------------------
# Loading the shipped (or overridden) datasets
# ---------------------------------------------------------------------------


def _shipped_path(filename: str) -> Path:
    return Path(str(resources.files("traincarbon").joinpath("data", filename)))


def default_data_paths() -> dict[str, Path]:
    """Paths of the active dataset files, honoring TRAINCARBON_DATA_DIR."""
    data_dir = os.environ.get(DATA_DIR_ENV)
    if data_dir:
        base = Path(data_dir)
        return {name: base / f"{name}.csv" for name in ("regions", "hardware", "geo")}
    return {name: _shipped_path(f"{name}.csv") for name in ("regions", "hardware", "geo")}


def _content_version(*paths: Path) -> str:
    digest = hashlib.sha256()
    for path in paths:
        digest.update(path.read_bytes())
    return f"custom-{digest.hexdigest()[:12]}"


def load_catalog(
    regions_path: Path | str | None = None,
    hardware_path: Path | str | None = None,
) -> DataCatalog:
    """Build a validated catalog from CSV paths (shipped data by default).

    The shipped datasets carry the pinned :data:`DATASET_VERSION`; any
    override gets a content-hash version so responses stay reproducible.
    """
    defaults = default_data_paths()
    r_path = Path(regions_path) if regions_path is not None else defaults["regions"]
    h_path = Path(hardware_path) if hardware_path is not None else defaults["hardware"]
    overridden = (
        regions_path is not None
        or hardware_path is not None
        or os.environ.get(DATA_DIR_ENV) is not None
    )
    version = _content_version(r_path, h_path) if overridden else DATASET_VERSION
    with open(r_path, "rb") as fh:
        regions = load_regions(fh)
    with open(h_path, "rb") as fh:
        hardware = load_hardware(fh)
    return validate_catalog(regions, hardware, version=version)


def load_geo_map(geo_path: Path | str | None = None) -> dict[str, str]:
    """Load the country -> geo_region map (shipped geo.csv by default)."""
    path = Path(geo_path) if geo_path is not None else default_data_paths()["geo"]
    with open(path, "rb") as fh:
        return load_geo(fh)
