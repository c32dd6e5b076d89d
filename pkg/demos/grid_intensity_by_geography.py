"""Summarize grid carbon intensity by geographic region, plus an
everyday-units translation of a sample run's net emissions.
"""

from traincarbon import (
    EstimateRequest,
    Provider,
    equivalence,
    estimate_emissions,
    load_catalog,
    load_geo_map,
    regional_stats,
)

catalog = load_catalog()
geo_map = load_geo_map()

print(f"{'geo region':15s} {'n':>3s} {'min':>7s} {'median':>7s} {'mean':>7s} {'max':>7s}  (gCO2eq/kWh)")
for s in regional_stats(catalog, geo_map):
    print(f"{s.geo_region:15s} {s.count:3d} {s.min:7.1f} {s.median:7.1f} {s.mean:7.1f} {s.max:7.1f}")

# The spread inside a single geography is the story: North America spans a
# 36.8x range, so "run it in the US/Canada" says almost nothing by itself.

run = estimate_emissions(
    catalog,
    EstimateRequest(
        provider=Provider.AWS,
        region_code="us-east-2",
        hardware_name="Tesla V100",
        device_count=8,
        hours=336.0,
    ),
)
print(f"\nsample run in us-east-2: net {run.net_gco2eq / 1000:.1f} kg CO2eq, roughly:")
for label, units in equivalence(run.net_gco2eq).items():
    print(f"  {units:10.1f} {label}")
