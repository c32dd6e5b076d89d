"""Compare device classes by theoretical compute efficiency (GFLOPS/W).

TDP-based efficiency is an approximation, but it cleanly separates CPUs,
consumer GPUs, datacenter accelerators, and embedded parts.
"""

from traincarbon import hardware_efficiency, list_hardware, load_catalog

catalog = load_catalog()

print(f"{'device':22s} {'kind':9s} {'W':>5s} {'GFLOPS32/W':>11s} {'GFLOPS16/W':>11s}")
reports = sorted(
    (hardware_efficiency(profile) for profile in list_hardware(catalog)),
    key=lambda report: report.gflops32_per_watt,
)
for report in reports:
    h = report.hardware
    print(
        f"{h.name:22s} {h.kind.value:9s} {h.tdp_watts:5.0f} "
        f"{report.gflops32_per_watt:11.2f} {report.gflops16_per_watt:11.2f}"
    )

v100 = next(r for r in reports if r.hardware.name == "Tesla V100")
tpu3 = next(r for r in reports if r.hardware.name == "TPU3")
xeon = next(r for r in reports if r.hardware.name == "Intel Xeon E5-2699")
print()
print(f"TPU3 is {tpu3.gflops32_per_watt / v100.gflops32_per_watt:.2f}x a V100 per watt (FP32);")
print(f"a V100 is {v100.gflops32_per_watt / xeon.gflops32_per_watt:.2f}x the Xeon.")
