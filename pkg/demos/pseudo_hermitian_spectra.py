"""Spectra along the two analytic pseudo-Hermitian slices (kappa1 = kappa2).

Unlike the PT case, pseudo-Hermiticity with kappa1 = kappa2 only exists
above a minimum coupling: the solved detunings turn complex below it
(shaded regions).  On the symmetric slice (g23 = g13, g12 = 0) the real
spectrum appears above an EP3 at g13/kappa2 = 2/sqrt(3); on the asymmetric
slice (g23 = 0, g12 = g13/sqrt(8)) the EP3 sits exactly at the feasibility
edge sqrt(8/3) and the spectrum keeps one real branch plus a conjugate
pair throughout the plotted window.

Writes pseudo_hermitian_spectra.png into demos/output/.
"""

import pathlib

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from trieps import (ConstraintMode, SystemParams, find_ep_along_axis,
                    spectrum_sweep)

OUT = pathlib.Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

BASE = SystemParams(0, 0, 0, 1.0, 1.0, -2.0, 0.0, 1.0, 0.0)
SLICES = [
    ("symmetric slice (g23 = g13)", ConstraintMode.PH_SYMMETRIC),
    ("asymmetric slice (g23 = 0)", ConstraintMode.PH_ASYMMETRIC),
]

fig, axes = plt.subplots(2, 2, figsize=(10, 7), sharex=True)

for col, (label, mode) in enumerate(SLICES):
    rows = spectrum_sweep(BASE, "g13", 0.8, 3.0, 500, mode)
    g = [r.axis_value for r in rows]
    excluded = [r.axis_value for r in rows if r.excluded]
    kept = [r for r in rows if not r.excluded]
    branches = list(zip(*[r.triple.values for r in kept]))
    gk = [r.axis_value for r in kept]
    for part, ax in zip(("real", "imag"), axes[:, col]):
        for lam, style in zip(branches, ("k--", "b:", "r-")):
            ax.plot(gk, [getattr(z, part) for z in lam], style, lw=1.4)
        if excluded:
            ax.axvspan(min(excluded), max(excluded), color="gold", alpha=0.35)
        ax.grid(alpha=0.3)
        ax.set_ylabel(f"{part.capitalize()} (lambda - omega3)/kappa2")
    if excluded:
        print(f"{label}: no pseudo-Hermiticity below "
              f"g13/kappa2 = {max(excluded):.4f}")
    for ep in find_ep_along_axis(BASE, "g13", 0.8, 3.0, mode):
        print(f"{label}: EP{ep.order} at g13/kappa2 = {ep.axis_value:.5f}")
        for ax in axes[:, col]:
            ax.axvline(ep.axis_value, color="green", alpha=0.6, lw=0.8)
    axes[0, col].set_title(label)
    axes[1, col].set_xlabel("g13/kappa2")

fig.tight_layout()
fig.savefig(OUT / "pseudo_hermitian_spectra.png", dpi=130)
print(f"figure: {OUT / 'pseudo_hermitian_spectra.png'}")
