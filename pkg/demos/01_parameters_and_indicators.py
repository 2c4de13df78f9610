"""Parameter handling: presets, nondimensionalization, and the two
epidemiological indicators (basic offspring and reproduction numbers).

Run:  python3 demos/01_parameters_and_indicators.py
"""

import dataclasses

import denguefront as df

print("=== built-in field-parameter presets ===")
for name in df.PRESET_NAMES:
    d = df.preset(name)
    print(f"{name}: r0_bar={d.r0_bar}/day, gamma_bar={d.gamma_bar:.5f}/day, "
          f"mu1_bar={d.mu1_bar:.5f}/day, mu2_bar={d.mu2_bar:.5f}/day")

d30 = df.preset("table3-30C")
n30 = df.nondimensionalize(d30)
print("\n=== nondimensional parameters at 30 C ===")
print(f"gamma={n30.gamma:.4f}  mu1={n30.mu1:.6f}  mu2={n30.mu2:.6f}  "
      f"sigma={n30.sigma:.6f}")
print(f"beta1={n30.beta1:.4f}  beta2={n30.beta2:.5f}  nu={n30.nu:.6f}  "
      f"k={n30.k}")
print(f"time unit = 1/r0_bar = {1 / d30.r0_bar} days;  "
      f"length unit = sqrt(D/r0) = {(d30.D_bar / d30.r0_bar) ** 0.5:.5f} km;  "
      f"speed unit = {df.speed_scale(d30):.5f} km/day")

print("\n=== indicators ===")
for name in df.PRESET_NAMES:
    n = df.nondimensionalize(df.preset(name))
    ind = df.basic_reproduction_number(n, v_star=0.7, h_star=1.0)
    print(f"{name}: Q0 = {ind.Q0:8.2f}   R0 = {ind.R0:7.2f}   "
          f"(u* = {ind.u_star:.3f} at v* = 0.7, h* = 1)")

print("\n=== forcing the offspring number to 1 (bifurcation) ===")
d15 = df.preset("table3-15C")
mu2 = df.mu2_for_unit_offspring(d15)
print(f"aquatic mortality that gives Q0 = 1 at 15 C: mu2_bar = {mu2:.6f}/day")
d15u = dataclasses.replace(d15, mu2_bar=mu2)
print(f"check: Q0 = {df.basic_offspring_number(df.nondimensionalize(d15u)):.12f}")

print("\n=== configuration files ===")
text = df.config_text(d30, variant="saturated")
print("a parameter set serializes to key = value lines, e.g.:")
print("\n".join(text.splitlines()[:4]) + "\n...")
cfg = df.parse_config(text)
print(f"round trip preserved the preset: {cfg.dimensional == d30}")
