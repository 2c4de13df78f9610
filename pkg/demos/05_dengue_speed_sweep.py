"""Dengue dispersion speed as a function of the aquatic background
density: the sweep behind the published circle/square speed lists.

Run:  python3 demos/05_dengue_speed_sweep.py
"""

import dataclasses
import os

import denguefront as df

OUT = os.path.join(os.path.dirname(__file__), "output")
os.makedirs(OUT, exist_ok=True)

d15u = df.with_unit_offspring(df.preset("table3-15C"))
print("base parameter set: 15 C with mu2_bar forced to "
      f"{d15u.mu2_bar:.4f}/day so the offspring number is 1")

v_list = [round(0.1 * i, 1) for i in range(1, 11)]
table = df.sweep_vstar(d15u, v_list)

print(f"\n{'v*':>5} {'calm (km/yr)':>14} {'wind (km/yr)':>14}")
for row in table.rows:
    print(f"{row.v_star:5.1f} {row.c_nowind:14.4f} {row.c_wind:14.4f}")

path = os.path.join(OUT, "dengue_speed_sweep.csv")
with open(path, "w") as fh:
    fh.write(table.to_csv())
print(f"\nCSV -> {path}")

print("\nweak-transmission rows degrade gracefully:")
weak = dataclasses.replace(d15u, beta1_bar=1e-6)
print(df.sweep_vstar(weak, [0.1, 0.5]).to_csv())

try:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(5, 3.4))
    ax.plot([r.v_star for r in table.rows],
            [r.c_nowind for r in table.rows], "o-", label="no wind")
    ax.plot([r.v_star for r in table.rows],
            [r.c_wind for r in table.rows], "s-", label="wind 18.25 km/yr")
    ax.set(xlabel="aquatic background v*", ylabel="c_min (km/year)",
           title="dengue dispersion speed vs mosquito density")
    ax.legend()
    fig.tight_layout()
    png = os.path.join(OUT, "dengue_speed_sweep.png")
    fig.savefig(png, dpi=120)
    print(f"figure -> {png}")
except ImportError:
    print("(matplotlib not installed; skipping the figure)")
