"""Acceptance suite: one test per release criterion, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -s`` to see the per-criterion
lines. Expected dataset values are frozen here as an independent copy so a
corrupted CSV cannot self-certify.
"""

from __future__ import annotations

import io
import json
import random
from contextlib import contextmanager

import pytest
from fastapi.testclient import TestClient

from traincarbon import (
    ComparisonMetric,
    CarbonIntensity,
    EstimateRequest,
    GridRegion,
    HardwareKind,
    HardwareProfile,
    Provider,
    Workload,
    cli,
    compare_regions,
    dump_hardware,
    dump_regions,
    estimate_emissions,
    hardware_efficiency,
    list_hardware,
    list_regions,
    load_hardware,
    load_regions,
    lookup_hardware,
    regional_stats,
    validate_catalog,
)
from traincarbon.service import create_app


@contextmanager
def criterion(name: str):
    try:
        yield
    except Exception:
        print(f"FAIL {name}", flush=True)
        raise
    print(f"PASS {name}", flush=True)


# ---------------------------------------------------------------------------
# Frozen dataset copy: (region_code, country, city, intensity) per provider
# ---------------------------------------------------------------------------

EXPECTED_GCP = [
    ("asia-east1", "Taiwan", "Changhua County", 557),
    ("asia-east2", "China", "Hong Kong", 702),
    ("asia-northeast1", "Japan", "Tokyo", 516),
    ("asia-northeast2", "Japan", "Osaka", 516),
    ("asia-south1", "India", "Mumbai", 920),
    ("asia-southeast1", "Singapore", "Jurong West", 419),
    ("australia-southeast1", "Australia", "Sydney", 802),
    ("europe-north1", "Finland", "Hamina", 211),
    ("europe-west1", "Belgium", "St. Ghislain", 267),
    ("europe-west2", "United Kingdom", "London", 623),
    ("europe-west3", "Germany", "Frankfurt", 615),
    ("europe-west4", "Netherlands", "Eemshaven", 569),
    ("europe-west6", "Switzerland", "Zürich", 16),
    ("northamerica-northeast1", "Canada", "Montréal", 20),
    ("southamerica-east1", "Brazil", "São Paulo", 205),
    ("us-central1", "USA", "Council Bluffs", 566.3),
    ("us-east1", "USA", "Moncks Corner", 367.8),
    ("us-east4", "USA", "Ashburn", 367.8),
    ("us-west1", "USA", "The Dalles", 297.6),
    ("us-west2", "USA", "Los Angeles", 240.6),
]

EXPECTED_AWS = [
    ("us-east-2", "USA", "Columbus", 568.2),
    ("us-east-1", "USA", "Ashburn", 367.8),
    ("us-west-1", "USA", "San Francisco", 240.6),
    ("us-west-2", "USA", "Portland", 297.6),
    ("ap-east-1", "China", "Hong Kong", 702),
    ("ap-south-1", "India", "Mumbai", 920),
    ("ap-northeast-3", "Japan", "Osaka", 516),
    ("ap-northeast-2", "South Korea", "Seoul", 517),
    ("ap-southeast-1", "Singapore", "Singapore", 419),
    ("ap-southeast-2", "Australia", "Sydney", 802),
    ("ap-northeast-1", "Japan", "Tokyo", 516),
    ("ca-central-1", "Canada", "Montreal", 20),
    ("cn-north-1", "China", "Beijing", 680),
    ("cn-northwest-1", "China", "Zhongwei", 680),
    ("eu-central-1", "Germany", "Frankfurt am Main", 615),
    ("eu-west-1", "Ireland", "Dublin", 617),
    ("eu-west-2", "United Kingdom", "London", 623),
    ("eu-west-3", "France", "Paris", 105),
    ("eu-north-1", "Sweden", "Stockholm", 47),
    ("sa-east-1", "Brazil", "Sao Paulo", 205),
    ("us-gov-east-1", "USA", "Dublin", 568.2),
    ("us-gov-west-1", "USA", "Seattle", 297.6),
]

EXPECTED_AZURE = [
    ("eastasia", "Hong Kong", "Wan Chai", 702),
    ("southeastasia", "Singapore", "Singapore", 419),
    ("centralus", "USA", "Des Moines", 736.6),
    ("eastus", "USA", "Blue Ridge", 367.8),
    ("eastus2", "USA", "Boydton", 367.8),
    ("westus", "USA", "San Francisco", 240.6),
    ("northcentralus", "USA", "Chicago", 568.2),
    ("southcentralus", "USA", "San Antonio", 460.4),
    ("northeurope", "Ireland", "Dublin", 617),
    ("westeurope", "Netherlands", "Amsterdam", 569),
    ("japanwest", "Japan", "Osaka-shi", 516),
    ("japaneast", "Japan", "Tokyo", 516),
    ("brazilsouth", "Brazil", "Sao Paulo", 205),
    ("australiaeast", "Australia", "Sydney", 802),
    ("australiasoutheast", "Australia", "Melbourne", 805),
    ("southindia", "India", "Pallavaram", 920),
    ("centralindia", "India", "Lohogaon", 920),
    ("westindia", "India", "Mumbai", 920),
    ("canadacentral", "Canada", "Toronto", 69.3),
    ("canadaeast", "Canada", "Quebec", 20),
    ("uksouth", "United Kingdom", "Midhurst", 623),
    ("ukwest", "United Kingdom", "Wallasey", 623),
    ("westcentralus", "USA", "Mountain View", 297.6),
    ("westus2", "USA", "Quincy", 297.6),
    ("koreacentral", "South Korea", "Seoul", 517),
    ("koreasouth", "South Korea", "Busan", 517),
    ("francecentral", "France", "Huriel", 105),
    ("francesouth", "France", "Realmont", 105),
    ("australiacentral", "Australia", "Forrest", 900),
    ("australiacentral2", "Australia", "Forrest", 900),
    ("southafricanorth", "South Africa", "Pretoria", 1009),
    ("southafricawest", "South Africa", "Stellenbosch", 1009),
]

# name, kind, tdp_watts, tflops32, tflops16
EXPECTED_HARDWARE = [
    ("RTX 2080 Ti", "gpu", 250, 13.45, 26.90),
    ("RTX 2080", "gpu", 215, 10.00, 20.00),
    ("GTX 1080 Ti", "gpu", 250, 11.34, 0.17),
    ("GTX 1080", "gpu", 180, 8.00, 0.13),
    ("AMD RX480", "gpu", 150, 5.80, 5.80),
    ("Titan V", "gpu", 250, 14.90, 29.80),
    ("Tesla V100", "gpu", 300, 15.00, 30.00),
    ("TPU2", "tpu", 250, 22.00, 45.00),
    ("TPU3", "tpu", 200, 45.00, 90.00),
    ("Intel Xeon E5-2699", "cpu", 145, 0.70, 0.70),
    ("AGX Xavier", "embedded", 30, 16.00, 32.00),
]

# name -> (GFLOPS32/W, GFLOPS16/W) as printed in the source table
EXPECTED_EFFICIENCY = {
    "RTX 2080 Ti": (53.80, 107.60),
    "RTX 2080": (46.51, 93.02),
    "GTX 1080 Ti": (45.36, 0.68),
    "GTX 1080": (44.44, 0.72),
    "AMD RX480": (38.67, 38.67),
    "Titan V": (59.60, 119.20),
    "Tesla V100": (50.00, 100.00),
    "TPU2": (88.00, 180.00),
    "TPU3": (225.00, 450.00),
    "Intel Xeon E5-2699": (4.83, 4.83),
    "AGX Xavier": (533.33, 1066.67),
}


def test_criterion_1_dataset_fidelity(catalog):
    with criterion("criterion 1: dataset fidelity (74 regions, 11 hardware, exact values)"):
        expected_by_provider = {
            Provider.GCP: EXPECTED_GCP,
            Provider.AWS: EXPECTED_AWS,
            Provider.AZURE: EXPECTED_AZURE,
        }
        assert len(list_regions(catalog, Provider.GCP)) == 20
        assert len(list_regions(catalog, Provider.AWS)) == 22
        assert len(list_regions(catalog, Provider.AZURE)) == 32
        for provider, expected_rows in expected_by_provider.items():
            loaded = {r.region_code: r for r in list_regions(catalog, provider)}
            assert len(loaded) == len(expected_rows)
            for code, country, city, intensity in expected_rows:
                region = loaded[code]
                assert region.intensity.value == intensity, code
                assert region.country == country, code
                assert region.city == city, code
            # transcription cross-check: provider intensity sums
            total = sum(r.intensity.value for r in loaded.values())
            expected_total = sum(row[3] for row in expected_rows)
            assert total == pytest.approx(expected_total, abs=1e-9)

        loaded_hw = {h.name: h for h in list_hardware(catalog)}
        assert len(loaded_hw) == 11
        for name, kind, tdp, t32, t16 in EXPECTED_HARDWARE:
            profile = loaded_hw[name]
            assert profile.kind.value == kind, name
            assert profile.tdp_watts == tdp, name
            assert profile.tflops32 == t32, name
            assert profile.tflops16 == t16, name


def test_criterion_2_efficiency_oracle(catalog):
    with criterion("criterion 2: GFLOPS/W match the printed table within 0.01"):
        for name, (expected32, expected16) in EXPECTED_EFFICIENCY.items():
            report = hardware_efficiency(lookup_hardware(catalog, name))
            assert report.gflops32_per_watt == pytest.approx(expected32, abs=0.01), name
            assert report.gflops16_per_watt == pytest.approx(expected16, abs=0.01), name


def test_criterion_3_north_america_extremes(catalog, geo_map):
    with criterion("criterion 3: North America spans 20 to 736.6 gCO2eq/kWh, ratio 36.83"):
        stats = {s.geo_region: s for s in regional_stats(catalog, geo_map)}
        na = stats["North America"]
        assert na.min == 20
        assert na.max == 736.6
        assert na.max / na.min == pytest.approx(36.83, abs=0.01)


def test_criterion_4_hardware_ratios(catalog):
    with criterion("criterion 4: TPU3/V100 = 4.50 both precisions; V100/Xeon FP32 = 10.35"):
        tpu3 = hardware_efficiency(lookup_hardware(catalog, "TPU3"))
        v100 = hardware_efficiency(lookup_hardware(catalog, "Tesla V100"))
        xeon = hardware_efficiency(lookup_hardware(catalog, "Intel Xeon E5-2699"))
        assert tpu3.gflops32_per_watt / v100.gflops32_per_watt == pytest.approx(4.50, abs=0.01)
        assert tpu3.gflops16_per_watt / v100.gflops16_per_watt == pytest.approx(4.50, abs=0.01)
        assert v100.gflops32_per_watt / xeon.gflops32_per_watt == pytest.approx(10.35, abs=0.01)


def _scenario_request(region_provider, region_code, hours=336.0):
    return EstimateRequest(
        provider=region_provider,
        region_code=region_code,
        hardware_name="Tesla V100",
        hours=hours,
        device_count=8,
        pue_override=1.0,
    )


def test_criterion_5_location_scenario_and_linearity(catalog):
    with criterion("criterion 5: Mumbai-vs-Quebec saves 725760 g; gross linear in time"):
        mumbai = estimate_emissions(catalog, _scenario_request(Provider.GCP, "asia-south1"))
        quebec = estimate_emissions(catalog, _scenario_request(Provider.AWS, "ca-central-1"))
        difference = mumbai.gross_gco2eq - quebec.gross_gco2eq
        assert difference == pytest.approx(725760.0, abs=1.0)

        rng = random.Random(20190610)
        for _ in range(1000):
            if rng.random() < 0.5:
                scale = 2.0 ** rng.randint(-12, 12)
                exact = True
            else:
                scale = rng.uniform(1e-4, 1e4)
                exact = False
            scaled = estimate_emissions(
                catalog, _scenario_request(Provider.GCP, "asia-south1", hours=336.0 * scale)
            )
            if exact:
                # power-of-two rescaling commutes with float rounding
                assert scaled.gross_gco2eq == scale * mumbai.gross_gco2eq
            else:
                assert scaled.gross_gco2eq == pytest.approx(
                    scale * mumbai.gross_gco2eq, rel=1e-12
                )


def _random_catalog(rng: random.Random):
    providers = list(Provider)
    n_regions = rng.randint(1, 5)
    regions = []
    used = set()
    while len(regions) < n_regions:
        code = f"zone-{rng.randint(0, 99)}"
        provider = rng.choice(providers)
        if (provider, code) in used:
            continue
        used.add((provider, code))
        regions.append(
            GridRegion(
                provider=provider,
                region_code=code,
                country="Randomia",
                city=f"City {len(regions)}",
                intensity=CarbonIntensity(round(rng.uniform(0.0, 2000.0), 3)),
                offset_ratio=rng.choice([0.0, 1.0, round(rng.uniform(0.01, 0.99), 3)]),
                default_pue=round(rng.uniform(1.0, 2.0), 3),
                source="random",
            )
        )
    hardware = [
        HardwareProfile(
            name="Rand GPU",
            kind=HardwareKind.GPU,
            tdp_watts=round(rng.uniform(10.0, 500.0), 1),
            tflops32=1.0,
            tflops16=2.0,
        )
    ]
    return validate_catalog(regions, hardware, version="random")


def test_criterion_6_property_suite(catalog):
    with criterion(
        "criterion 6: offset bounds, argmin stability, 1000-case comparison oracle, "
        "CSV round-trip"
    ):
        # Offset bounds over every shipped region.
        for region in catalog.regions:
            estimate = estimate_emissions(
                catalog,
                EstimateRequest(
                    provider=region.provider,
                    region_code=region.region_code,
                    hardware_name="RTX 2080",
                    hours=72.0,
                    device_count=2,
                ),
            )
            assert 0.0 <= estimate.net_gco2eq <= estimate.gross_gco2eq
            assert (estimate.net_gco2eq == 0.0) == (region.offset_ratio == 1.0)

        # Argmin stability: best region invariant under time rescaling.
        rng = random.Random(13)
        base = compare_regions(catalog, Workload(hardware_name="Tesla V100", hours=336.0))
        best = (base.results[0].region.provider, base.results[0].region.region_code)
        for _ in range(100):
            scale = rng.uniform(1e-3, 1e3)
            scaled = compare_regions(
                catalog, Workload(hardware_name="Tesla V100", hours=336.0 * scale)
            )
            assert (
                scaled.results[0].region.provider,
                scaled.results[0].region.region_code,
            ) == best
        assert best == (Provider.GCP, "europe-west6")

        # Brute-force comparison oracle on 1000 random small catalogs.
        rng = random.Random(42)
        for _ in range(1000):
            small = _random_catalog(rng)
            workload = Workload(
                hardware_name="Rand GPU",
                hours=round(rng.uniform(0.1, 1000.0), 3),
                device_count=rng.randint(1, 32),
                pue_override=rng.choice([None, round(rng.uniform(1.0, 2.0), 2)]),
                utilization=round(rng.uniform(0.05, 1.0), 3),
            )
            metric = rng.choice(list(ComparisonMetric))
            comparison = compare_regions(small, workload, metric=metric)
            naive = []
            for region in small.regions:
                estimate = estimate_emissions(
                    small,
                    EstimateRequest(
                        provider=region.provider,
                        region_code=region.region_code,
                        hardware_name=workload.hardware_name,
                        hours=workload.hours,
                        device_count=workload.device_count,
                        pue_override=workload.pue_override,
                        utilization=workload.utilization,
                    ),
                )
                value = (
                    estimate.net_gco2eq
                    if metric is ComparisonMetric.NET
                    else estimate.gross_gco2eq
                )
                naive.append((value, region.provider.value, region.region_code))
            naive.sort()
            got = [
                (
                    e.net_gco2eq if metric is ComparisonMetric.NET else e.gross_gco2eq,
                    e.region.provider.value,
                    e.region.region_code,
                )
                for e in comparison.results
            ]
            assert got == naive

        # Catalog CSV round-trip.
        regions = load_regions(io.BytesIO(dump_regions(catalog.regions).encode("utf-8")))
        hardware = load_hardware(io.BytesIO(dump_hardware(catalog.hardware).encode("utf-8")))
        rebuilt = validate_catalog(regions, hardware, version=catalog.version)
        assert rebuilt == catalog


def test_criterion_7_cli_service_equivalence(catalog, geo_map, capsys):
    with criterion("criterion 7: CLI json equals service response for 50 random requests"):
        client = TestClient(create_app(catalog=catalog, geo_map=geo_map))
        rng = random.Random(7)
        hardware_names = [h.name for h in list_hardware(catalog)]
        regions = list_regions(catalog)
        for _ in range(50):
            region = rng.choice(regions)
            request = {
                "provider": region.provider.value,
                "region_code": region.region_code,
                "hardware_name": rng.choice(hardware_names),
                "device_count": rng.randint(1, 16),
                "hours": round(rng.uniform(0.5, 2000.0), 4),
                "pue_override": rng.choice([None, round(rng.uniform(1.0, 2.0), 3)]),
                "utilization": round(rng.uniform(0.1, 1.0), 4),
            }

            argv = [
                "estimate",
                "--provider", request["provider"],
                "--region", request["region_code"],
                "--hardware", request["hardware_name"],
                "--count", str(request["device_count"]),
                "--hours", repr(request["hours"]),
                "--utilization", repr(request["utilization"]),
                "--format", "json",
            ]
            if request["pue_override"] is not None:
                argv += ["--pue", repr(request["pue_override"])]
            assert cli.main(argv) == 0
            cli_doc = json.loads(capsys.readouterr().out)

            response = client.post("/v1/estimate", json=request)
            assert response.status_code == 200
            assert cli_doc == response.json()
