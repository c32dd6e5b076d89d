"""Emissions arithmetic: energy draw, gross/offset/net CO2eq, efficiency, stats.

Every operation here is a pure function over immutable inputs, so the whole
module is safe for unlimited concurrent use. The estimate computation has
four inputs: the energy the hardware draws, the region the job runs in, that
region's grid carbon intensity, and the provider's offset policy.

Energy model::

    device_kwh   = tdp_watts * utilization * device_count * hours / 1000
    total_kwh    = device_kwh * pue
    overhead_kwh = total_kwh - device_kwh          # cooling, conversion, aux

Emissions model::

    gross_gco2eq  = total_kwh * intensity_gco2_per_kwh
    offset_gco2eq = gross_gco2eq * offset_ratio
    net_gco2eq    = gross_gco2eq - offset_gco2eq

All arithmetic stays at full float precision; rounding happens only when
results are rendered (see :mod:`traincarbon.reporting`).
"""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass
from enum import Enum
from typing import Mapping

from .catalog import (
    DataCatalog,
    GridRegion,
    HardwareProfile,
    Provider,
    list_regions,
    lookup_hardware,
    lookup_region,
)
from .errors import ConfigurationError, EmptyComparisonError, RangeError


class ComparisonMetric(str, Enum):
    GROSS = "gross"
    NET = "net"


@dataclass(frozen=True)
class Workload:
    """A training run minus its location: what runs, for how long."""

    hardware_name: str
    hours: float
    device_count: int = 1
    pue_override: float | None = None
    utilization: float = 1.0


@dataclass(frozen=True)
class EstimateRequest:
    """A training-run description pinned to one provider region."""

    provider: Provider
    region_code: str
    hardware_name: str
    hours: float
    device_count: int = 1
    pue_override: float | None = None
    utilization: float = 1.0

    @property
    def workload(self) -> Workload:
        return Workload(
            hardware_name=self.hardware_name,
            hours=self.hours,
            device_count=self.device_count,
            pue_override=self.pue_override,
            utilization=self.utilization,
        )


@dataclass(frozen=True)
class EnergyBreakdown:
    """kWh drawn by the devices plus the datacenter overhead on top."""

    device_kwh: float
    overhead_kwh: float
    total_kwh: float


@dataclass(frozen=True)
class EmissionsEstimate:
    """Energy plus gross, offset, and net CO2eq for one training run.

    Offsets are reported separately and never hide the gross figure:
    ``net = gross - offset`` with both sides always present.
    """

    request: EstimateRequest
    region: GridRegion
    energy: EnergyBreakdown
    gross_gco2eq: float
    offset_gco2eq: float
    net_gco2eq: float


@dataclass(frozen=True)
class EfficiencyReport:
    """Theoretical compute efficiency: peak GFLOPS per watt of TDP."""

    hardware: HardwareProfile
    gflops32_per_watt: float
    gflops16_per_watt: float


@dataclass(frozen=True)
class RegionalStats:
    """Intensity distribution of all catalog rows in one geographic region."""

    geo_region: str
    count: int
    min: float
    max: float
    mean: float
    median: float


@dataclass(frozen=True)
class RegionComparison:
    """All candidate regions for a workload, cheapest emissions first.

    ``ratio`` is worst/best for the chosen metric, or None when the best
    value is zero (the ratio is undefined).
    """

    metric: ComparisonMetric
    results: tuple[EmissionsEstimate, ...]
    ratio: float | None


# A few public equivalency factors (grams CO2eq per unit) for translating
# net emissions into everyday terms. Values follow the US EPA greenhouse-gas
# equivalencies calculator; replace per deployment as needed.
DEFAULT_EQUIVALENCE_FACTORS: dict[str, float] = {
    "miles driven by an average passenger car": 404.0,
    "smartphone charges": 8.22,
    "pounds of coal burned": 905.0,
}


# ---------------------------------------------------------------------------
# Parameter validation
# ---------------------------------------------------------------------------


def _check_positive_finite(value: float, name: str) -> None:
    if not math.isfinite(value) or value <= 0:
        raise RangeError(f"{name} must be a positive finite number, got {value!r}", field=name)


def _validate_run_params(
    device_count: int, hours: float, utilization: float, pue_override: float | None
) -> None:
    if device_count < 1:
        raise RangeError(f"device_count must be >= 1, got {device_count!r}", field="device_count")
    _check_positive_finite(hours, "hours")
    _check_positive_finite(utilization, "utilization")
    if utilization > 1.0:
        raise RangeError(f"utilization must be in (0, 1], got {utilization!r}", field="utilization")
    if pue_override is not None:
        if not math.isfinite(pue_override) or pue_override < 1.0:
            raise RangeError(
                f"pue_override must be >= 1.0, got {pue_override!r}", field="pue_override"
            )


def validate_workload(workload: Workload) -> None:
    """Raise :class:`RangeError` on the first out-of-range workload field."""
    _validate_run_params(
        workload.device_count, workload.hours, workload.utilization, workload.pue_override
    )


def validate_request(request: EstimateRequest) -> None:
    """Raise :class:`RangeError` on the first out-of-range request field."""
    _validate_run_params(
        request.device_count, request.hours, request.utilization, request.pue_override
    )


# ---------------------------------------------------------------------------
# Core operations
# ---------------------------------------------------------------------------


def compute_energy(
    profile: HardwareProfile,
    device_count: int,
    hours: float,
    pue: float,
    utilization: float = 1.0,
) -> EnergyBreakdown:
    """Energy drawn by ``device_count`` devices running ``hours`` wall-clock hours.

    TDP is used as the power-draw proxy, scaled by ``utilization``; the PUE
    multiplier attributes datacenter overhead (cooling, power conversion,
    auxiliary load) on top of the device draw.
    """
    _validate_run_params(device_count, hours, utilization, None)
    if not math.isfinite(pue) or pue < 1.0:
        raise RangeError(f"pue must be >= 1.0, got {pue!r}", field="pue")
    device_kwh = profile.tdp_watts * utilization * device_count * hours / 1000.0
    # Single multiply keeps the total exactly linear in pue; the subtraction
    # is exact for pue <= 2, so total == device + overhead holds there too.
    total_kwh = device_kwh * pue
    return EnergyBreakdown(
        device_kwh=device_kwh,
        overhead_kwh=total_kwh - device_kwh,
        total_kwh=total_kwh,
    )


def estimate_emissions(catalog: DataCatalog, request: EstimateRequest) -> EmissionsEstimate:
    """Gross, offset, and net CO2eq of one training run in one region.

    PUE resolution: an explicit ``pue_override`` wins, otherwise the
    region's default applies.
    """
    validate_request(request)
    profile = lookup_hardware(catalog, request.hardware_name)
    region = lookup_region(catalog, request.provider, request.region_code)
    pue = request.pue_override if request.pue_override is not None else region.default_pue
    energy = compute_energy(
        profile, request.device_count, request.hours, pue, request.utilization
    )
    gross = energy.total_kwh * region.intensity.value
    offset = gross * region.offset_ratio
    return EmissionsEstimate(
        request=request,
        region=region,
        energy=energy,
        gross_gco2eq=gross,
        offset_gco2eq=offset,
        net_gco2eq=gross - offset,
    )


def hardware_efficiency(profile: HardwareProfile) -> EfficiencyReport:
    """Peak GFLOPS per watt at FP32 and FP16, from TDP and peak TFLOPS."""
    return EfficiencyReport(
        hardware=profile,
        gflops32_per_watt=profile.tflops32 * 1000.0 / profile.tdp_watts,
        gflops16_per_watt=profile.tflops16 * 1000.0 / profile.tdp_watts,
    )


def _metric_value(estimate: EmissionsEstimate, metric: ComparisonMetric) -> float:
    if metric is ComparisonMetric.NET:
        return estimate.net_gco2eq
    return estimate.gross_gco2eq


def compare_regions(
    catalog: DataCatalog,
    workload: Workload,
    provider: Provider | None = None,
    metric: ComparisonMetric = ComparisonMetric.GROSS,
) -> RegionComparison:
    """Estimate the workload in every candidate region, best first.

    Each region is estimated independently (so region-default PUEs apply
    unless the workload overrides PUE), then sorted ascending by the chosen
    metric with (provider, region_code) as the tie-break.
    """
    validate_workload(workload)
    regions = list_regions(catalog, provider)
    if not regions:
        name = provider.value if provider is not None else "any provider"
        raise EmptyComparisonError(f"no regions to compare for {name}")
    # Resolve hardware up front so an unknown name fails before 74 lookups.
    lookup_hardware(catalog, workload.hardware_name)

    estimates = [
        estimate_emissions(
            catalog,
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
        for region in regions
    ]
    estimates.sort(
        key=lambda e: (_metric_value(e, metric), e.region.provider.value, e.region.region_code)
    )
    best = _metric_value(estimates[0], metric)
    worst = _metric_value(estimates[-1], metric)
    ratio = worst / best if best > 0 else None
    return RegionComparison(metric=metric, results=tuple(estimates), ratio=ratio)


def regional_stats(catalog: DataCatalog, geo_map: Mapping[str, str]) -> tuple[RegionalStats, ...]:
    """Intensity min/max/mean/median per geographic region, alphabetical.

    Every catalog row counts once, so a city served by several providers
    contributes one data point per provider. Raises
    :class:`ConfigurationError` for a catalog country missing from the map.
    """
    buckets: dict[str, list[float]] = {}
    for region in catalog.regions:
        geo_region = geo_map.get(region.country)
        if geo_region is None:
            raise ConfigurationError(
                f"country {region.country!r} is not mapped to a geo_region"
            )
        buckets.setdefault(geo_region, []).append(region.intensity.value)
    return tuple(
        RegionalStats(
            geo_region=name,
            count=len(values),
            min=min(values),
            max=max(values),
            mean=statistics.fmean(values),
            median=statistics.median(values),
        )
        for name, values in sorted(buckets.items())
    )


def equivalence(
    net_gco2eq: float, factors: Mapping[str, float] = DEFAULT_EQUIVALENCE_FACTORS
) -> dict[str, float]:
    """Translate grams CO2eq into everyday units via a factor table."""
    results: dict[str, float] = {}
    for label, grams_per_unit in factors.items():
        if not math.isfinite(grams_per_unit) or grams_per_unit <= 0:
            raise ConfigurationError(
                f"equivalence factor {label!r} must be a positive finite number, "
                f"got {grams_per_unit!r}"
            )
        results[label] = net_gco2eq / grams_per_unit
    return results
