"""Parameter space and Hamiltonian matrix of the ternary gain/loss cavity system.

Three modes with angular frequencies omega_n, loss (+) / gain (-) rates
kappa_n, and real symmetric couplings g12, g13, g23.  Mode 2 is lossy by
convention (kappa2 > 0) and all couplings are non-negative.  The reference
frame used throughout the numerics is the normalized one: rates and
couplings in units of kappa2, frequencies measured from omega3.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import ValidationError

# 3x3 complex ndarray with symmetric real off-diagonals and -kappa_n on the
# imaginary part of the diagonal.
ComplexMatrix3 = np.ndarray


@dataclass(frozen=True)
class SystemParams:
    """The nine physical parameters of the three-cavity model."""

    omega1: float
    omega2: float
    omega3: float
    kappa1: float
    kappa2: float
    kappa3: float
    g12: float
    g13: float
    g23: float

    def __post_init__(self):
        for name in ("omega1", "omega2", "omega3", "kappa1", "kappa2",
                     "kappa3", "g12", "g13", "g23"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise ValidationError(f"{name} must be finite, got {v!r}")
        if self.kappa2 <= 0.0:
            raise ValidationError(
                f"cavity 2 must be lossy (kappa2 > 0), got kappa2={self.kappa2!r}")
        for name in ("g12", "g13", "g23"):
            if getattr(self, name) < 0.0:
                raise ValidationError(f"{name} must be >= 0")

    def replace(self, **kwargs) -> "SystemParams":
        return replace(self, **kwargs)


def detunings(p: SystemParams) -> tuple[float, float]:
    """Frequency offsets (delta1, delta2) of cavities 1 and 2 from cavity 3."""
    return p.omega1 - p.omega3, p.omega2 - p.omega3


def normalize(p: SystemParams) -> SystemParams:
    """Rescale to the kappa2 = 1, omega3 = 0 frame.

    Eigenvalues of the normalized system are (lambda - omega3)/kappa2 of the
    original one.
    """
    k = p.kappa2
    return SystemParams(
        omega1=(p.omega1 - p.omega3) / k,
        omega2=(p.omega2 - p.omega3) / k,
        omega3=0.0,
        kappa1=p.kappa1 / k,
        kappa2=1.0,
        kappa3=p.kappa3 / k,
        g12=p.g12 / k,
        g13=p.g13 / k,
        g23=p.g23 / k,
    )


def build_matrix(p: SystemParams) -> ComplexMatrix3:
    """Non-Hermitian mode matrix: diagonal omega_n - i*kappa_n, real couplings."""
    return np.array(
        [
            [p.omega1 - 1j * p.kappa1, p.g12, p.g13],
            [p.g12, p.omega2 - 1j * p.kappa2, p.g23],
            [p.g13, p.g23, p.omega3 - 1j * p.kappa3],
        ],
        dtype=complex,
    )
