"""Minimum traveling-wave speeds from the front dispersion relation:
mosquito invasion with and without wind, dengue dispersion at the
bifurcation, and the tangency structure behind the minimum.

Run:  python3 demos/03_invasion_wave_speeds.py
"""

import dataclasses
import os

import numpy as np

import denguefront as df

OUT = os.path.join(os.path.dirname(__file__), "output")
os.makedirs(OUT, exist_ok=True)

d30 = df.preset("table3-30C")
scale30 = df.speed_scale(d30)

print("=== mosquito invasion at 30 C ===")
for label, d in (("no wind", dataclasses.replace(d30, nu2_bar=0.0)),
                 ("wind 18.25 km/yr", d30)):
    n = df.nondimensionalize(d)
    res = df.min_wave_speed(n, df.MOSQUITO_INVASION, scale_km_per_day=scale30)
    print(f"{label:>18}: c_min = {res.c_min:.4f}  ->  "
          f"{res.c_bar_year:6.2f} km/year   (m* = {res.m_star:.4f}, "
          f"tangency residuals {max(res.tangency_residuals):.1e})")

print("\n=== the speed curve c(m) and its minimum ===")
n30 = df.nondimensionalize(d30)
res = df.min_wave_speed(n30, df.MOSQUITO_INVASION)
ms = np.geomspace(res.m_star / 6, res.m_star * 6, 25)
curve = df.dispersion_curve(n30, df.MOSQUITO_INVASION, ms)
for m, c in curve[::6]:
    marker = "  <- near the minimum" if abs(m - res.m_star) < 0.1 else ""
    print(f"  m = {m:6.4f}   c(m) = {c:7.4f}{marker}")
path = os.path.join(OUT, "dispersion_curve_30C_wind.csv")
np.savetxt(path, curve, delimiter=",", header="m,c", comments="")
print(f"full curve written to {path}")

print("\n=== tangency: -m* is a double root of the characteristic cubic ===")
cubic = df.cubic_phat(n30, res.c_min, df.MOSQUITO_INVASION)
print(f"P(-m*)  = {cubic(-res.m_star):+.2e}")
print(f"P'(-m*) = {cubic.derivative(-res.m_star):+.2e}")
for dc in (+1e-3, -1e-3):
    roots = df.cubic_phat(n30, res.c_min + dc, df.MOSQUITO_INVASION).roots()
    near = [z for z in roots if abs(z.real + res.m_star) < 0.3 * res.m_star]
    kinds = ["real" if abs(z.imag) < 1e-9 else "complex" for z in near]
    print(f"c_min {dc:+.0e}: roots near -m* are {kinds}")

print("\n=== dengue dispersion at the bifurcation (15 C, Q0 = 1) ===")
d15u = df.with_unit_offspring(df.preset("table3-15C"))
scale15 = df.speed_scale(d15u)
for label, d in (("no wind", dataclasses.replace(d15u, nu2_bar=0.0)),
                 ("wind 18.25 km/yr", d15u)):
    n = df.nondimensionalize(d)
    res = df.min_wave_speed(n, df.DENGUE_DISPERSION, v_star=0.7, h_star=1.0,
                            scale_km_per_day=scale15)
    print(f"{label:>18}: c_min = {res.c_min:.4f}  ->  "
          f"{res.c_bar_year:6.2f} km/year")

print("\n=== fronts running against the wind are slower ===")
against = df.min_wave_speed(n30, df.MOSQUITO_INVASION, wind_sign=-1,
                            scale_km_per_day=scale30)
print(f"downwind {df.min_wave_speed(n30, df.MOSQUITO_INVASION).c_min:.4f}  "
      f"vs upwind {against.c_min:.4f} (nondimensional)")
