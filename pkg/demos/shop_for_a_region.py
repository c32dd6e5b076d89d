"""Rank every catalog region for a fixed workload before dispatching it.

The comparison is the what-if tool: same workload, every region, sorted by
gross emissions, with the worst/best ratio as the headline number.
"""

from traincarbon import Workload, compare_regions, load_catalog

catalog = load_catalog()
workload = Workload(hardware_name="Tesla V100", device_count=8, hours=336.0, pue_override=1.0)

comparison = compare_regions(catalog, workload)

print("five cleanest regions for this run:")
for estimate in comparison.results[:5]:
    r = estimate.region
    print(
        f"  {r.provider.value:5s} {r.region_code:24s} {r.intensity.value:7.1f} g/kWh"
        f"  -> {estimate.gross_gco2eq / 1000:8.1f} kg gross"
    )

print("\nfive dirtiest:")
for estimate in comparison.results[-5:]:
    r = estimate.region
    print(
        f"  {r.provider.value:5s} {r.region_code:24s} {r.intensity.value:7.1f} g/kWh"
        f"  -> {estimate.gross_gco2eq / 1000:8.1f} kg gross"
    )

print(f"\nworst/best gross ratio across the catalog: {comparison.ratio:.2f}")
