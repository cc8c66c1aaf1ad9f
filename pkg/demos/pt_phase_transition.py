"""PT-symmetric phase transition of the three-cavity system.

With cavity 1 neutral (kappa1 = 0) and the 2/3 pair gain/loss balanced, the
spectrum is real above a critical coupling and contains a conjugate pair
below it.  On resonance (delta1 = 0, g23 = 0) the transition is a
third-order exceptional point at g13/kappa2 = 1/sqrt(2): all three branches
coalesce.  Detuning cavity 1 and switching on g23 splits the picture: the
phase transition happens at a second-order EP, while a third-order
coalescence survives inside the broken phase.

Writes pt_phase_transition.png into demos/output/.
"""

import pathlib

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from trieps import ConstraintMode, find_ep_along_axis, pt_specialize, spectrum_sweep

OUT = pathlib.Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

CASES = [
    ("on resonance", pt_specialize(1.0, 0.5, 0.0, 0.0)),
    ("detuned, g23 on", pt_specialize(1.0, 0.5, 0.7544, -0.5768)),
]

fig, axes = plt.subplots(2, 2, figsize=(10, 7), sharex=True)

for col, (label, base) in enumerate(CASES):
    rows = spectrum_sweep(base, "g13", 0.02, 2.0, 600, ConstraintMode.PT)
    g = [r.axis_value for r in rows]
    branches = list(zip(*[r.triple.values for r in rows]))
    for part, ax in zip(("real", "imag"), axes[:, col]):
        for lam, style in zip(branches, ("k--", "b:", "r-")):
            vals = [getattr(z, part) for z in lam]
            ax.plot(g, vals, style, lw=1.4)
        ax.set_ylabel(f"{part.capitalize()} (lambda - omega3)/kappa2")
        ax.grid(alpha=0.3)

    eps = find_ep_along_axis(base, "g13", 0.05, 2.0, ConstraintMode.PT)
    for ep in eps:
        print(f"{label}: EP{ep.order} at g13/kappa2 = {ep.axis_value:.5f} "
              f"(coalesced eigenvalue {ep.lam.real:+.5f})")
        for ax in axes[:, col]:
            ax.axvline(ep.axis_value, color="purple" if ep.order == 3 else "gray",
                       alpha=0.5, lw=0.8)
    axes[0, col].set_title(label)
    axes[1, col].set_xlabel("g13/kappa2")

fig.tight_layout()
fig.savefig(OUT / "pt_phase_transition.png", dpi=130)
print(f"figure: {OUT / 'pt_phase_transition.png'}")
