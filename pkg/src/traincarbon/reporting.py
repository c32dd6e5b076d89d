"""Rounding policy and JSON-ready dict builders shared by the CLI and service.

Internal arithmetic runs at full float precision; this module is the single
place results get rounded for reporting:

* grams CO2eq     -> 1 decimal
* kilograms CO2eq -> 3 decimals
* kWh             -> 3 decimals
* ratios          -> 2 decimals
* GFLOPS/W        -> 2 decimals

Both front ends render through these builders, so a CLI ``--format json``
document and the matching service response are field-for-field equal.
"""

from __future__ import annotations

from typing import Any

from .catalog import GridRegion, HardwareProfile
from .engine import (
    EfficiencyReport,
    EmissionsEstimate,
    EstimateRequest,
    RegionComparison,
    RegionalStats,
)

GRAMS_DECIMALS = 1
KG_DECIMALS = 3
KWH_DECIMALS = 3
RATIO_DECIMALS = 2
GFLOPS_DECIMALS = 2


def round_grams(value: float) -> float:
    return round(value, GRAMS_DECIMALS)


def round_kg(value: float) -> float:
    return round(value, KG_DECIMALS)


def round_kwh(value: float) -> float:
    return round(value, KWH_DECIMALS)


def round_ratio(value: float | None) -> float | None:
    return None if value is None else round(value, RATIO_DECIMALS)


def region_dict(region: GridRegion) -> dict[str, Any]:
    return {
        "provider": region.provider.value,
        "region_code": region.region_code,
        "country": region.country,
        "city": region.city,
        "intensity_gco2_per_kwh": region.intensity.value,
        "offset_ratio": region.offset_ratio,
        "default_pue": region.default_pue,
        "source": region.source,
    }


def hardware_dict(
    profile: HardwareProfile, efficiency: EfficiencyReport | None = None
) -> dict[str, Any]:
    doc: dict[str, Any] = {
        "name": profile.name,
        "kind": profile.kind.value,
        "tdp_watts": profile.tdp_watts,
        "tflops32": profile.tflops32,
        "tflops16": profile.tflops16,
    }
    if efficiency is not None:
        doc["gflops32_per_watt"] = round(efficiency.gflops32_per_watt, GFLOPS_DECIMALS)
        doc["gflops16_per_watt"] = round(efficiency.gflops16_per_watt, GFLOPS_DECIMALS)
    return doc


def request_dict(request: EstimateRequest) -> dict[str, Any]:
    return {
        "provider": request.provider.value,
        "region_code": request.region_code,
        "hardware_name": request.hardware_name,
        "device_count": request.device_count,
        "hours": request.hours,
        "pue_override": request.pue_override,
        "utilization": request.utilization,
    }


def estimate_dict(estimate: EmissionsEstimate, version: str) -> dict[str, Any]:
    return {
        "request": request_dict(estimate.request),
        "region": region_dict(estimate.region),
        "energy": {
            "device_kwh": round_kwh(estimate.energy.device_kwh),
            "overhead_kwh": round_kwh(estimate.energy.overhead_kwh),
            "total_kwh": round_kwh(estimate.energy.total_kwh),
        },
        "gross_gco2eq": round_grams(estimate.gross_gco2eq),
        "offset_gco2eq": round_grams(estimate.offset_gco2eq),
        "net_gco2eq": round_grams(estimate.net_gco2eq),
        "dataset_version": version,
    }


def comparison_dict(comparison: RegionComparison, version: str) -> dict[str, Any]:
    return {
        "metric": comparison.metric.value,
        "results": [
            {
                "rank": rank,
                "provider": e.region.provider.value,
                "region_code": e.region.region_code,
                "country": e.region.country,
                "city": e.region.city,
                "intensity_gco2_per_kwh": e.region.intensity.value,
                "total_kwh": round_kwh(e.energy.total_kwh),
                "gross_gco2eq": round_grams(e.gross_gco2eq),
                "offset_gco2eq": round_grams(e.offset_gco2eq),
                "net_gco2eq": round_grams(e.net_gco2eq),
            }
            for rank, e in enumerate(comparison.results, start=1)
        ],
        "worst_best_ratio": round_ratio(comparison.ratio),
        "dataset_version": version,
    }


def stats_dict(stats: tuple[RegionalStats, ...], version: str) -> dict[str, Any]:
    return {
        "stats": [
            {
                "geo_region": s.geo_region,
                "count": s.count,
                "min_gco2_per_kwh": s.min,
                "max_gco2_per_kwh": s.max,
                "mean_gco2_per_kwh": round(s.mean, GRAMS_DECIMALS),
                "median_gco2_per_kwh": round(s.median, GRAMS_DECIMALS),
            }
            for s in stats
        ],
        "dataset_version": version,
    }
