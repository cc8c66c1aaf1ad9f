"""Exceptional lines at fixed kappa1/kappa2 and the EP3 surface.

Relaxing the PT constraint to general pseudo-Hermiticity (kappa1 > 0), one
exceptional line of third-order points exists per gain/loss ratio
kappa1/kappa2.  Stacked over that ratio the lines sweep out a surface in
(g13, g23, kappa1)/kappa2 space which contains the PT line as its
kappa1 = 0 edge.  At kappa1 = kappa2 the line is exactly the circle
g13^2 + g23^2 = (8/3) kappa2^2.

Writes el3_family.png and es3_surface.png into demos/output/.
"""

import pathlib

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from trieps import el3_general, es3_scan

OUT = pathlib.Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

# -- family of lines ---------------------------------------------------------
fig, ax = plt.subplots(figsize=(6, 5))
styles = {0.1: "k-", 1.0: "r--", 2.0: "b:", 3.0: "g-."}
for kap, style in styles.items():
    mesh = el3_general(kap, 150)
    ax.plot([mp.g13 for mp in mesh.samples], [mp.g23 for mp in mesh.samples],
            style, lw=1.6, label=f"kappa1/kappa2 = {kap}")
    end = mesh.samples[-1]
    print(f"kappa1/kappa2={kap}: line ends at g13/kappa2={end.g13:.5f}")

circle = el3_general(1.0, 150)
worst = max(abs(mp.g13 ** 2 + mp.g23 ** 2 - 8 / 3) for mp in circle.samples)
print(f"kappa1=kappa2 circle check: max |g13^2+g23^2-8/3| = {worst:.2e}")

ax.plot([1.1547], [1.1547], "o", color="green", ms=9)
ax.plot([1.6330], [0.0], "o", color="purple", ms=9)
ax.set_xlabel("g13/kappa2")
ax.set_ylabel("g23/kappa2")
ax.legend()
ax.grid(alpha=0.3)
fig.tight_layout()
fig.savefig(OUT / "el3_family.png", dpi=130)

# -- the surface -------------------------------------------------------------
mesh = es3_scan(0.0, 3.0, 25, 80)
fig = plt.figure(figsize=(7, 6))
ax3 = fig.add_subplot(projection="3d")
for row in mesh.samples:
    ax3.plot([mp.g13 for mp in row], [mp.g23 for mp in row],
             [mp.kappa1_ratio for mp in row], "b-", lw=0.8)
ax3.set_xlabel("g13/kappa2")
ax3.set_ylabel("g23/kappa2")
ax3.set_zlabel("kappa1/kappa2")
ax3.set_title("Third-order exceptional surface")
fig.tight_layout()
fig.savefig(OUT / "es3_surface.png", dpi=130)

n_pts = sum(len(row) for row in mesh.samples)
worst = max(max(abs(mp.point.residuals[0]), abs(mp.point.residuals[1]))
            for row in mesh.samples for mp in row)
print(f"surface mesh: {n_pts} EP3 samples, worst |A|,|B| residual {worst:.2e}")
print(f"figures: {OUT / 'el3_family.png'}, {OUT / 'es3_surface.png'}")
