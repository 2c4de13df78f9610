"""Equilibrium sets, Jacobian spectra and stability classification,
for both the full six-compartment system and the winged/aquatic subsystem.

Run:  python3 demos/02_stability_analysis.py
"""

import numpy as np

import denguefront as df

n30 = df.nondimensionalize(df.preset("table3-30C"))
variant = df.ModelVariant.malthus2()

print("=== equilibrium families at 30 C ===")
res = df.equilibria(n30, variant)
print(f"Q0 = {res.Q0:.2f} -> det(A) = 1 - Q0 = {res.det_A:.2f}")
print("families present:", ", ".join(f.set_id for f in res.families))

point = df.mosquito_free_point(h_star=1.0)
print("\n=== mosquito-free point, full system ===")
print(df.classify(point, n30).to_text())

print("\n=== closed form vs dense eigenvalues ===")
closed = df.homog_spectrum(point, n30)
dense = df.dense_spectrum(df.jacobian_homog(point, n30))
print("closed-form:", np.sort_complex(np.array(closed.eigenvalues)).round(8))
print("dense      :", np.sort_complex(np.array(dense.eigenvalues)).round(8))
print(f"largest pairing distance: {df.match_spectra(closed, dense):.2e}")

print("\n=== winged/aquatic subsystem ===")
rep = df.mosquito_jacobian_spectrum(n30)
print("eigenvalues:", [f"{ev.real:+.6f}" for ev in rep.spectrum.eigenvalues])
print(rep.note)
print(df.classify(df.mosquito_ray_point(n30, 0.0), n30, scope="mosquito2").to_text())

print("\n=== the bifurcation case: offspring number forced to 1 ===")
d15u = df.with_unit_offspring(df.preset("table3-15C"))
n15u = df.nondimensionalize(d15u)
res = df.equilibria(n15u, variant)
print("families present:", ", ".join(f.set_id for f in res.families))
endemic = df.mosquito_endemic_point(n15u, h_star=1.0, v_star=0.7)
print(df.classify(endemic, n15u).to_text())
print()
print(df.classify(df.mosquito_ray_point(n15u, 0.7), n15u,
                  scope="mosquito2").to_text())
