"""The third-order exceptional line of the PT-symmetric case.

Every point of the curve 4 g23^2 + 2 g13^2 + 3*4^(1/3) g13^(4/3) - 4 = 0
(couplings in units of kappa2) is a third-order exceptional point: the
detuning delta1 rides along the curve so that all three eigenvalues
coalesce.  Two reference points are marked: (0.70711, 0), where the
coalesced eigenvalue sits at omega3, and (0.4, 0.75440), where it is
pulled down to omega3 - 0.19225 kappa2.

Writes pt_exceptional_line.png and el3_pt.csv into demos/output/.
"""

import pathlib

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from trieps import detunings, el3_pt

OUT = pathlib.Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

mesh = el3_pt(400)
g13 = [mp.g13 for mp in mesh.samples]
g23 = [mp.g23 for mp in mesh.samples]

with open(OUT / "el3_pt.csv", "w") as fh:
    fh.write("g13,g23,delta1,lambda_ep3\n")
    for mp in mesh.samples:
        d1, _ = detunings(mp.point.params)
        fh.write(f"{mp.g13:.12g},{mp.g23:.12g},{d1:.12g},"
                 f"{mp.point.lam.real:.12g}\n")

fig, ax = plt.subplots(figsize=(5.5, 5))
ax.plot(g13, g23, "k-", lw=2)
for x, color in ((g13[-1], "green"), (0.4, "purple")):
    idx = min(range(len(g13)), key=lambda i: abs(g13[i] - x))
    mp = mesh.samples[idx]
    ax.plot(mp.g13, mp.g23, "o", color=color, ms=9)
    print(f"anchor ({color}): g13={mp.g13:.5f} g23={mp.g23:.5f} "
          f"lambda_EP3={mp.point.lam.real:+.5f}")
ax.set_xlabel("g13/kappa2")
ax.set_ylabel("g23/kappa2")
ax.set_title("Third-order exceptional line, PT-symmetric case")
ax.grid(alpha=0.3)
fig.tight_layout()
fig.savefig(OUT / "pt_exceptional_line.png", dpi=130)
print(f"figure: {OUT / 'pt_exceptional_line.png'}")
print(f"data:   {OUT / 'el3_pt.csv'}")
