"""traincarbon: CO2eq emissions estimation for ML training workloads.

Estimates are built from four inputs: hardware power draw (TDP), training
time, the datacenter region's grid carbon intensity, and the provider's
offset policy, with datacenter PUE applied on top of device energy.
"""

from .catalog import (
    CarbonIntensity,
    DataCatalog,
    DATASET_VERSION,
    GridRegion,
    HardwareKind,
    HardwareProfile,
    Provider,
    dump_hardware,
    dump_regions,
    list_hardware,
    list_regions,
    load_catalog,
    load_geo_map,
    load_hardware,
    load_regions,
    lookup_hardware,
    lookup_region,
    validate_catalog,
)
from .engine import (
    ComparisonMetric,
    EfficiencyReport,
    EmissionsEstimate,
    EnergyBreakdown,
    EstimateRequest,
    RegionComparison,
    RegionalStats,
    Workload,
    compare_regions,
    compute_energy,
    equivalence,
    estimate_emissions,
    hardware_efficiency,
    regional_stats,
)
from .errors import (
    ConfigurationError,
    DuplicateKeyError,
    EmptyCatalogError,
    EmptyComparisonError,
    IngestError,
    NotFoundError,
    RangeError,
    TrainCarbonError,
)

__version__ = "0.1.0"

__all__ = [
    "CarbonIntensity",
    "ComparisonMetric",
    "ConfigurationError",
    "DataCatalog",
    "DATASET_VERSION",
    "DuplicateKeyError",
    "EfficiencyReport",
    "EmissionsEstimate",
    "EmptyCatalogError",
    "EmptyComparisonError",
    "EnergyBreakdown",
    "EstimateRequest",
    "GridRegion",
    "HardwareKind",
    "HardwareProfile",
    "IngestError",
    "NotFoundError",
    "Provider",
    "RangeError",
    "RegionComparison",
    "RegionalStats",
    "TrainCarbonError",
    "Workload",
    "compare_regions",
    "compute_energy",
    "dump_hardware",
    "dump_regions",
    "equivalence",
    "estimate_emissions",
    "hardware_efficiency",
    "list_hardware",
    "list_regions",
    "load_catalog",
    "load_geo_map",
    "load_hardware",
    "load_regions",
    "lookup_hardware",
    "lookup_region",
    "regional_stats",
    "validate_catalog",
    "__version__",
]
