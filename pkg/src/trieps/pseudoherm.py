"""Pseudo-Hermiticity constraints of the ternary cavity model.

A balanced gain/loss configuration is pseudo-Hermitian when three conditions
hold simultaneously:

    r1 = kappa1 + kappa2 + kappa3                                   = 0
    r2 = delta1*kappa1 + delta2*kappa2                              = 0
    r3 = g12^2*kappa3 + g13^2*kappa2 + g23^2*kappa1
         - delta1*delta2*kappa3 + kappa1*kappa2*kappa3              = 0

The solver treats (kappa3, delta1, delta2) as dependent on the free inputs
(kappa1, kappa2, g12, g13, g23).  Two physically important specializations
are provided as constraint modes: the PT-symmetric case (kappa1 = 0) and the
kappa1 = kappa2 slices with either g23 = g13, g12 = 0 or g23 = 0,
g12 = g13/sqrt(8).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from itertools import permutations
from typing import Sequence

from .errors import InfeasibleError, ValidationError
from .model import SystemParams, detunings, normalize


@dataclass(frozen=True)
class ConstraintResiduals:
    r1: float
    r2: float
    r3: float

    @property
    def max_abs(self) -> float:
        return max(abs(self.r1), abs(self.r2), abs(self.r3))


@dataclass(frozen=True)
class ConstraintSolution:
    """Dependent parameters solving the pseudo-Hermiticity conditions.

    When ``feasible`` is False, ``radicand`` holds the negative value whose
    square root would have given delta2.  For kappa1 = 0, delta1 is not fixed
    by the constraints; it is reported as None with ``delta1_free`` set.
    """

    kappa3: float
    delta1: float | None
    delta2: float | None
    branch: int
    feasible: bool
    radicand: float | None = None
    delta1_free: bool = False


def ph_residuals(p: SystemParams) -> ConstraintResiduals:
    """The three pseudo-Hermiticity residuals, zero iff p is pseudo-Hermitian."""
    d1, d2 = detunings(p)
    r1 = p.kappa1 + p.kappa2 + p.kappa3
    r2 = d1 * p.kappa1 + d2 * p.kappa2
    r3 = (p.g12 ** 2 * p.kappa3 + p.g13 ** 2 * p.kappa2 + p.g23 ** 2 * p.kappa1
          - d1 * d2 * p.kappa3 + p.kappa1 * p.kappa2 * p.kappa3)
    return ConstraintResiduals(r1, r2, r3)


def is_pseudo_hermitian(p: SystemParams, tol: float = 1e-9) -> bool:
    """Threshold test on the residuals, evaluated in the normalized frame."""
    if tol <= 0:
        raise ValidationError("tol must be positive")
    return ph_residuals(normalize(p)).max_abs <= tol


def solve_constraints(kappa1: float, kappa2: float, g12: float, g13: float,
                      g23: float, branch: int = +1) -> ConstraintSolution:
    """Solve the pseudo-Hermiticity conditions for (kappa3, delta1, delta2).

    kappa3 = -(kappa1 + kappa2) always.  For kappa1 > 0 the detunings follow
    from delta1 = -(kappa2/kappa1)*delta2 and a radicand that must be
    non-negative; ``branch`` selects the sign of delta2.  For kappa1 = 0 the
    conditions force delta2 = 0 and g12 = g13, leaving delta1 free.
    """
    if kappa2 <= 0:
        raise ValidationError("kappa2 must be positive")
    if kappa1 < 0:
        raise ValidationError("kappa1 must be >= 0 for the constraint solver")
    if min(g12, g13, g23) < 0:
        raise ValidationError("couplings must be >= 0")
    if branch not in (+1, -1):
        raise ValidationError("branch must be +1 or -1")

    kappa3 = -(kappa1 + kappa2)
    if kappa1 == 0.0:
        # r2 forces delta2 = 0 (kappa2 > 0); r3 reduces to g13^2 = g12^2.
        mismatch = g13 ** 2 - g12 ** 2
        if abs(mismatch) > 1e-12 * max(1.0, g12 ** 2, g13 ** 2):
            return ConstraintSolution(kappa3, None, None, branch,
                                      feasible=False, radicand=mismatch)
        return ConstraintSolution(kappa3, None, 0.0, branch, feasible=True,
                                  radicand=0.0, delta1_free=True)

    rad = -(kappa1 / (kappa2 * kappa3)) * (
        g12 ** 2 * kappa3 + g13 ** 2 * kappa2 + g23 ** 2 * kappa1
        + kappa1 * kappa2 * kappa3)
    if rad < 0.0:
        return ConstraintSolution(kappa3, None, None, branch, feasible=False,
                                  radicand=rad)
    delta2 = branch * math.sqrt(rad)
    delta1 = -(kappa2 / kappa1) * delta2
    return ConstraintSolution(kappa3, delta1, delta2, branch, feasible=True,
                              radicand=rad)


def embed_solution(sol: ConstraintSolution, kappa1: float, kappa2: float,
                   g12: float, g13: float, g23: float,
                   delta1: float = 0.0, omega3: float = 0.0) -> SystemParams:
    """Build full SystemParams from a feasible constraint solution.

    ``delta1`` is only consulted in the kappa1 = 0 branch, where the
    constraints leave it free.
    """
    if not sol.feasible:
        raise InfeasibleError("cannot embed an infeasible constraint solution",
                              radicand=sol.radicand)
    d1 = delta1 if sol.delta1_free else sol.delta1
    return SystemParams(
        omega1=omega3 + d1, omega2=omega3 + sol.delta2, omega3=omega3,
        kappa1=kappa1, kappa2=kappa2, kappa3=sol.kappa3,
        g12=g12, g13=g13, g23=g23)


def pt_specialize(kappa2: float, g13: float, g23: float,
                  delta1: float) -> SystemParams:
    """PT-symmetric configuration: neutral cavity 1, balanced 2/3 pair.

    Sets kappa1 = 0, kappa3 = -kappa2, delta2 = 0, g12 = g13 with omega3 = 0
    as the frequency reference.
    """
    if kappa2 <= 0:
        raise ValidationError("kappa2 must be positive")
    if g13 < 0 or g23 < 0:
        raise ValidationError("couplings must be >= 0")
    return SystemParams(
        omega1=delta1, omega2=0.0, omega3=0.0,
        kappa1=0.0, kappa2=kappa2, kappa3=-kappa2,
        g12=g13, g13=g13, g23=g23)


def spectral_symmetry_check(eigs: Sequence[complex], tol: float = 1e-9) -> bool:
    """True iff the eigenvalue multiset is closed under complex conjugation.

    This is the defining spectral property of pseudo-Hermiticity: either all
    eigenvalues are real or the complex ones occur in conjugate pairs.
    Matching is by the best assignment over permutations.
    """
    vals = [complex(z) for z in eigs]
    conj = [z.conjugate() for z in vals]
    n = len(vals)
    best = min(
        max(abs(vals[i] - perm[i]) for i in range(n))
        for perm in permutations(conj))
    return best <= tol


class ConstraintMode(enum.Enum):
    """Parameter re-derivation rules applied at each point of a sweep."""

    NONE = "none"
    PT = "pt"
    PH_SYMMETRIC = "ph-symmetric"
    PH_ASYMMETRIC = "ph-asymmetric"
    PH_GENERAL = "ph-general"


def constrain(base: SystemParams, mode: ConstraintMode,
              branch: int = +1) -> SystemParams:
    """Re-derive the dependent parameters of ``base`` under ``mode``.

    Raises InfeasibleError where the constraints admit no real solution
    (sweeps turn that into EXCLUDED rows).
    """
    if mode is ConstraintMode.NONE:
        return base

    d1, _ = detunings(base)
    if mode is ConstraintMode.PT:
        p = pt_specialize(base.kappa2, base.g13, base.g23, d1)
        return p.replace(omega1=base.omega3 + d1, omega2=base.omega3,
                         omega3=base.omega3)

    if mode is ConstraintMode.PH_SYMMETRIC:
        k2 = base.kappa2
        sol = solve_constraints(k2, k2, 0.0, base.g13, base.g13, branch)
        if not sol.feasible:
            raise InfeasibleError(
                f"no pseudo-Hermiticity: g13={base.g13!r} below the "
                f"symmetric-slice threshold (radicand {sol.radicand!r})",
                radicand=sol.radicand)
        return embed_solution(sol, k2, k2, 0.0, base.g13, base.g13,
                              omega3=base.omega3)

    if mode is ConstraintMode.PH_ASYMMETRIC:
        k2 = base.kappa2
        g12 = base.g13 / math.sqrt(8.0)
        sol = solve_constraints(k2, k2, g12, base.g13, 0.0, branch)
        if not sol.feasible:
            raise InfeasibleError(
                f"no pseudo-Hermiticity: g13={base.g13!r} below the "
                f"asymmetric-slice threshold (radicand {sol.radicand!r})",
                radicand=sol.radicand)
        return embed_solution(sol, k2, k2, g12, base.g13, 0.0,
                              omega3=base.omega3)

    if mode is ConstraintMode.PH_GENERAL:
        sol = solve_constraints(base.kappa1, base.kappa2, base.g12, base.g13,
                                base.g23, branch)
        if not sol.feasible:
            raise InfeasibleError(
                f"no pseudo-Hermiticity for kappa1={base.kappa1!r}, "
                f"couplings ({base.g12!r}, {base.g13!r}, {base.g23!r}) "
                f"(radicand {sol.radicand!r})", radicand=sol.radicand)
        return embed_solution(sol, base.kappa1, base.kappa2, base.g12,
                              base.g13, base.g23, delta1=d1,
                              omega3=base.omega3)

    raise ValidationError(f"unknown constraint mode {mode!r}")
