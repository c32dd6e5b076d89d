"""Estimate the footprint of one training run, start to finish.

Scenario: fine-tuning on 8 Tesla V100s for two weeks (336 hours) in a
hydro-powered region vs a coal-heavy one.
"""

from traincarbon import EstimateRequest, Provider, estimate_emissions, load_catalog

catalog = load_catalog()

for provider, region in [(Provider.AWS, "ca-central-1"), (Provider.GCP, "asia-south1")]:
    request = EstimateRequest(
        provider=provider,
        region_code=region,
        hardware_name="Tesla V100",
        device_count=8,
        hours=336.0,
        pue_override=1.0,
    )
    estimate = estimate_emissions(catalog, request)
    r = estimate.region
    print(f"{provider.value}/{region}  ({r.city}, {r.country})")
    print(f"  grid intensity : {r.intensity.value:g} gCO2eq/kWh")
    print(f"  energy         : {estimate.energy.total_kwh:.1f} kWh")
    print(f"  gross          : {estimate.gross_gco2eq / 1000:.1f} kg CO2eq")
    print(f"  net of offsets : {estimate.net_gco2eq / 1000:.1f} kg CO2eq")
    print()

# The location choice alone swings this run by roughly 725 kg CO2eq:
# the same job, the same hardware, a different plug.
