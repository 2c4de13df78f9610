"""Numerical verification of the model family's point symmetries:
residual operators, group actions, and equivariance of solution samples.

Run:  python3 demos/06_symmetry_checks.py
"""

import dataclasses

import numpy as np

import denguefront as df

print("=== the generator catalog ===")
for case_id, gen in df.CATALOG.items():
    print(f"{case_id:>14}: {gen.description}")

# a parameter row admitting the mosquito-scaling generator:
# p = q1 = q2 = 0 and no mosquito-to-human transmission
n = df.NondimParams(gamma=0.1, mu1=0.3, mu2=0.1, mu3=0.0, sigma=0.15,
                    beta1=0.6, beta2=0.0, nu=0.07, k=0.25)
start = df.HomogState(u=0.4, w=0.05, v=0.3, h=0.7, I=0.2, r=0.1)
traj = df.integrate_homog(start, n, df.ModelVariant.family(0.0), 10.0,
                          tol=1e-11)
fields = df.FieldSet.from_trajectory(traj)
grid = df.Grid.regular(0.0, 1.0, 5, 0.5, 6.5, 121)

print("\n=== residuals of a solution sample ===")
sample = df.residual(fields, n, grid)
print("per-equation max-norms:",
      np.array2string(sample.max_norms(), precision=2))
print("(pure time-stencil error: the sample solves the system)")

print("\n=== mosquito scaling (u,w,v) -> e^a (u,w,v) ===")
report = df.check_equivariance(df.generator("1"), n, fields, eps_g=0.37,
                               grid=grid)
print(report.to_text())

print("\n=== the same scaling fails once transmission to humans is on ===")
n_bad = dataclasses.replace(n, beta2=0.01)
traj_bad = df.integrate_homog(start, n_bad, df.ModelVariant.family(0.0),
                              10.0, tol=1e-11)
bad_fields = df.FieldSet.from_trajectory(traj_bad)
try:
    df.apply_group(df.generator("1"), 0.37, bad_fields, n_bad)
except df.AdmissibilityError as exc:
    print(f"admissibility: {exc}")
report = df.check_equivariance(df.generator("1"), n_bad, bad_fields, 0.37,
                               grid, enforce=False)
print(f"forced application verdict: "
      f"{'pass' if report.passed else 'fail (as it should)'}")

print("\n=== translations are admitted for every parameter set ===")
n30 = df.nondimensionalize(df.preset("table3-30C"))
traj30 = df.integrate_homog(start, n30, df.ModelVariant.malthus2(), 10.0,
                            tol=1e-11)
f30 = df.FieldSet.from_trajectory(traj30)
for case in ("x-translation", "t-translation"):
    rep = df.check_equivariance(df.generator(case), n30, f30, 0.5, grid)
    print(f"{case}: {'pass' if rep.passed else 'fail'}")

print("\n=== superposing a human-block solution leaves residuals alone ===")
n6 = dataclasses.replace(n, beta1=0.0)
traj6 = df.integrate_homog(start, n6, df.ModelVariant.family(0.0), 10.0,
                           tol=1e-11)
rep = df.check_equivariance(df.generator("6"), n6,
                            df.FieldSet.from_trajectory(traj6), 0.8, grid)
print(f"infected/recovered offset: {'pass' if rep.passed else 'fail'}")
print(f"note: {df.generator('6').notes}")
