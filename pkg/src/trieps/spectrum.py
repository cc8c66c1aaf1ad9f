"""Secular cubic, root classification and eigenvalue branches.

Under the pseudo-Hermiticity conditions the characteristic polynomial of the
mode matrix reduces, in the shifted variable x = lambda - omega3, to a monic
cubic with real coefficients

    x^3 + b x^2 + c x + d = 0,
    b = -(delta1 + delta2),
    c = delta1*delta2 - (g12^2 + g13^2 + g23^2)
        - (kappa1*kappa2 + kappa1*kappa3 + kappa2*kappa3),
    d = delta1*g23^2 + delta2*g13^2 - 2*g12*g13*g23
        + (delta1*kappa2 + delta2*kappa1)*kappa3.

Root structure is classified through the resolvent quantities

    A = b^2 - 3c,  B = bc - 9d,  C = c^2 - 3bd,  Delta = B^2 - 4AC:

Delta < 0 gives three distinct real roots, Delta > 0 one real root plus a
complex-conjugate pair, Delta = 0 a degeneracy -- a second-order exceptional
point when A, B != 0 and a third-order one (triple root -b/3) when A = B = 0.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (NonConvergenceError, PreconditionError, UnknownAxisError,
                     ValidationError)
from .model import ComplexMatrix3, SystemParams, build_matrix, detunings, normalize
from .pseudoherm import ConstraintMode, InfeasibleError, constrain, ph_residuals


@dataclass(frozen=True)
class CubicCoeffs:
    """Real coefficients of the reduced secular cubic (monic, a = 1)."""

    b: float
    c: float
    d: float
    a: float = 1.0

    def __post_init__(self):
        if self.a != 1.0:
            raise ValidationError("the reduced cubic is monic (a = 1)")
        for name in ("b", "c", "d"):
            if not math.isfinite(getattr(self, name)):
                raise ValidationError(f"coefficient {name} must be finite")

    def __call__(self, x: complex) -> complex:
        return ((x + self.b) * x + self.c) * x + self.d

    @property
    def scale(self) -> float:
        return max(1.0, abs(self.b), abs(self.c), abs(self.d))


@dataclass(frozen=True)
class DiscriminantSet:
    A: float
    B: float
    C: float
    Delta: float


class SpectralClass(enum.Enum):
    THREE_REAL_DISTINCT = "three-real-distinct"
    ONE_REAL_PLUS_CONJUGATE_PAIR = "one-real-plus-conjugate-pair"
    EP2 = "ep2"
    EP3 = "ep3"


@dataclass(frozen=True)
class EigenTriple:
    """The three eigenvalue branches of the reduced cubic.

    Conventions: for three real roots, lambda_minus <= lambda_zero <=
    lambda_plus; for one real root plus a pair, lambda_zero is the real one
    and lambda_plus the branch with positive imaginary part; at an EP2 the
    coalesced pair is lambda_plus = lambda_minus.
    """

    lambda_plus: complex
    lambda_minus: complex
    lambda_zero: complex
    classification: SpectralClass
    coeffs: CubicCoeffs
    disc: DiscriminantSet = field(repr=False)

    @property
    def values(self) -> tuple[complex, complex, complex]:
        return (self.lambda_plus, self.lambda_minus, self.lambda_zero)


def char_poly_general(H: ComplexMatrix3) -> tuple[complex, complex, complex]:
    """Monic characteristic polynomial of H: x^3 + b x^2 + c x + d, complex.

    No pseudo-Hermiticity assumed; the coefficients are generally complex.
    """
    H = np.asarray(H, dtype=complex)
    tr = H[0, 0] + H[1, 1] + H[2, 2]
    minors = (H[0, 0] * H[1, 1] - H[0, 1] * H[1, 0]
              + H[0, 0] * H[2, 2] - H[0, 2] * H[2, 0]
              + H[1, 1] * H[2, 2] - H[1, 2] * H[2, 1])
    det = (H[0, 0] * (H[1, 1] * H[2, 2] - H[1, 2] * H[2, 1])
           - H[0, 1] * (H[1, 0] * H[2, 2] - H[1, 2] * H[2, 0])
           + H[0, 2] * (H[1, 0] * H[2, 1] - H[1, 1] * H[2, 0]))
    return -tr, minors, -det


def cubic_coeffs_reduced(p: SystemParams, tol: float = 1e-9) -> CubicCoeffs:
    """Real coefficients of the secular cubic in x = lambda - omega3.

    Only valid under the pseudo-Hermiticity conditions; raises
    PreconditionError when the (normalized-frame) residuals exceed ``tol``.
    """
    res = ph_residuals(normalize(p))
    if res.max_abs > tol:
        raise PreconditionError(
            "parameters are not pseudo-Hermitian "
            f"(max residual {res.max_abs:.3e} > {tol:.1e}); "
            "the reduced real cubic does not apply")
    d1, d2 = detunings(p)
    k1, k2, k3 = p.kappa1, p.kappa2, p.kappa3
    b = -(d1 + d2)
    c = d1 * d2 - (p.g12 ** 2 + p.g13 ** 2 + p.g23 ** 2) \
        - (k1 * k2 + k1 * k3 + k2 * k3)
    d = d1 * p.g23 ** 2 + d2 * p.g13 ** 2 - 2.0 * p.g12 * p.g13 * p.g23 \
        + (d1 * k2 + d2 * k1) * k3
    return CubicCoeffs(b=b, c=c, d=d)


def discriminants(coeffs: CubicCoeffs) -> DiscriminantSet:
    """Resolvent quantities A, B, C and the discriminant Delta = B^2 - 4AC."""
    a, b, c, d = coeffs.a, coeffs.b, coeffs.c, coeffs.d
    A = b * b - 3.0 * a * c
    B = b * c - 9.0 * a * d
    C = c * c - 3.0 * b * d
    return DiscriminantSet(A=A, B=B, C=C, Delta=B * B - 4.0 * A * C)


def _cbrt(x: float) -> float:
    return math.copysign(abs(x) ** (1.0 / 3.0), x)


def _polish_root(x: complex, coeffs: CubicCoeffs) -> complex:
    # One Newton step; skipped near multiple roots where p' ~ 0.
    f = coeffs(x)
    fp = (3.0 * x + 2.0 * coeffs.b) * x + coeffs.c
    if abs(fp) > 1e-8 * coeffs.scale:
        x = x - f / fp
    return x


def solve_cubic(coeffs: CubicCoeffs, tol: float | None = None) -> EigenTriple:
    """Roots of the real reduced cubic with degeneracy classification.

    Three-real-root configurations use the trigonometric form (no complex
    cancellation); the one-real-plus-pair case uses Cardano with the
    larger-magnitude cube root picked first.  Each simple root gets one
    Newton polish step.  ``tol`` is the degeneracy band on A, B and Delta;
    the default is 1e-8 times the coefficient scale.
    """
    if tol is None:
        tol = 1e-8 * coeffs.scale
    b, c, d = coeffs.b, coeffs.c, coeffs.d
    disc = discriminants(coeffs)
    shift = -b / 3.0

    if abs(disc.Delta) <= tol:
        if abs(disc.A) <= tol and abs(disc.B) <= tol:
            r = complex(shift)
            return EigenTriple(r, r, r, SpectralClass.EP3, coeffs, disc)
        # double root + simple root
        double = -disc.B / (2.0 * disc.A)
        simple = -b + disc.B / disc.A
        return EigenTriple(complex(double), complex(double), complex(simple),
                           SpectralClass.EP2, coeffs, disc)

    p = c - b * b / 3.0
    q = 2.0 * b ** 3 / 27.0 - b * c / 3.0 + d

    if disc.Delta < 0.0:
        # three distinct real roots
        m = 2.0 * math.sqrt(-p / 3.0)
        arg = 3.0 * q / (p * m)
        arg = min(1.0, max(-1.0, arg))
        theta = math.acos(arg)
        roots = sorted(
            m * math.cos((theta - 2.0 * math.pi * k) / 3.0) + shift
            for k in range(3))
        roots = [_polish_root(complex(r), coeffs).real for r in roots]
        lo, mid, hi = sorted(roots)
        return EigenTriple(complex(hi), complex(lo), complex(mid),
                           SpectralClass.THREE_REAL_DISTINCT, coeffs, disc)

    # one real root and a conjugate pair; Cardano intermediates stay real,
    # cube roots are sign-preserving, the larger-magnitude one is computed
    # first to dodge cancellation.
    card = (q / 2.0) ** 2 + (p / 3.0) ** 3
    sq = math.sqrt(max(card, 0.0))
    u3, v3 = -q / 2.0 + sq, -q / 2.0 - sq
    if abs(u3) >= abs(v3):
        u = _cbrt(u3)
        v = -p / (3.0 * u) if u != 0.0 else 0.0
    else:
        v = _cbrt(v3)
        u = -p / (3.0 * v) if v != 0.0 else 0.0
    lam0 = _polish_root(complex(u + v + shift), coeffs)
    lam0 = complex(lam0.real)  # the real root of a real cubic
    # the pair follows from Vieta: sum = -b - lam0, product = -d/lam0
    # (or c when lam0 = 0, which forces d = 0).
    s = -b - lam0.real
    prod = -d / lam0.real if lam0.real != 0.0 else c
    im2 = prod - (s / 2.0) ** 2
    im = math.sqrt(max(im2, 0.0))
    lam_p = _polish_root(complex(s / 2.0, im), coeffs)
    lam_m = complex(lam_p.real, -lam_p.imag)
    return EigenTriple(lam_p, lam_m, lam0,
                       SpectralClass.ONE_REAL_PLUS_CONJUGATE_PAIR, coeffs, disc)


def solve_cubic_complex(b: complex, c: complex, d: complex,
                        polish: bool = True) -> np.ndarray:
    """All roots of the monic complex cubic x^3 + b x^2 + c x + d.

    General Cardano over the complex field; used for the unreduced secular
    polynomial where pseudo-Hermiticity is not assumed.
    """
    b, c, d = complex(b), complex(c), complex(d)
    p = c - b * b / 3.0
    q = 2.0 * b ** 3 / 27.0 - b * c / 3.0 + d
    shift = -b / 3.0
    sq = cmath.sqrt(q * q / 4.0 + p ** 3 / 27.0)
    u3 = -q / 2.0 + sq
    if abs(u3) < abs(-q / 2.0 - sq):
        u3 = -q / 2.0 - sq
    if u3 == 0:
        roots = [shift, shift, shift]
    else:
        u = u3 ** (1.0 / 3.0)
        w = complex(-0.5, math.sqrt(3.0) / 2.0)
        roots = []
        for k in range(3):
            uk = u * w ** k
            roots.append(uk - p / (3.0 * uk) + shift)
    if polish:
        scale = max(1.0, abs(b), abs(c), abs(d))
        out = []
        for x in roots:
            f = ((x + b) * x + c) * x + d
            fp = (3.0 * x + 2.0 * b) * x + c
            if abs(fp) > 1e-8 * scale:
                x = x - f / fp
            out.append(x)
        roots = out
    return np.array(roots, dtype=complex)


def eigensolve_oracle(H: ComplexMatrix3) -> np.ndarray:
    """Eigenvalues of H by LAPACK's QR iteration, sorted by (real, imag).

    Independent verification path: shares no code with the closed-form cubic
    solver.  Raises NonConvergenceError if the iteration fails.
    """
    H = np.asarray(H, dtype=complex)
    if H.shape != (3, 3):
        raise ValidationError(f"expected a 3x3 matrix, got shape {H.shape}")
    if not np.all(np.isfinite(H.view(float))):
        raise ValidationError("matrix entries must be finite")
    try:
        ev = np.linalg.eigvals(H)
    except np.linalg.LinAlgError as exc:
        raise NonConvergenceError(f"QR iteration did not converge: {exc}") from exc
    order = np.lexsort((ev.imag, ev.real))
    return ev[order]


_AXES = ("omega1", "omega2", "omega3", "kappa1", "kappa2", "kappa3",
         "g12", "g13", "g23", "delta1", "delta2")


def with_axis_value(p: SystemParams, axis: str, value: float) -> SystemParams:
    """Copy of p with one named parameter replaced.

    delta1/delta2 set omega1/omega2 relative to the current omega3.
    """
    if axis not in _AXES:
        raise UnknownAxisError(
            f"unknown axis {axis!r}; expected one of {', '.join(_AXES)}")
    if axis == "delta1":
        return p.replace(omega1=p.omega3 + value)
    if axis == "delta2":
        return p.replace(omega2=p.omega3 + value)
    return p.replace(**{axis: value})


@dataclass(frozen=True)
class SweepRow:
    """One sample of a spectral sweep; excluded rows carry no eigenvalues."""

    axis_value: float
    triple: EigenTriple | None
    excluded: bool = False
    reason: str | None = None
    params: SystemParams | None = None


def _pair_to_previous(prev: tuple[complex, complex, complex],
                      cur: tuple[complex, complex, complex]) -> tuple:
    """Permutation of cur minimizing total distance to prev (6 candidates)."""
    from itertools import permutations
    best, best_cost = cur, math.inf
    for perm in permutations(cur):
        cost = sum(abs(a - z) for a, z in zip(prev, perm))
        if cost < best_cost:
            best, best_cost = perm, cost
    return best


def spectrum_sweep(base: SystemParams, axis: str, lo: float, hi: float,
                   steps: int, constraint: ConstraintMode = ConstraintMode.NONE,
                   branch: int = +1, tol: float | None = None) -> list[SweepRow]:
    """Eigenvalue branches versus one parameter under a constraint mode.

    At each axis value the dependent parameters are re-derived per
    ``constraint``; values where the constraints have no real solution
    produce EXCLUDED rows instead of aborting.  Branch columns are
    continuity-paired between adjacent rows so they plot as smooth curves.
    """
    if steps < 2:
        raise ValidationError("steps must be >= 2")
    if axis not in _AXES:
        raise UnknownAxisError(
            f"unknown axis {axis!r}; expected one of {', '.join(_AXES)}")

    values = np.linspace(lo, hi, steps)
    rows: list[SweepRow] = []
    for v in values:
        try:
            p = constrain(with_axis_value(base, axis, float(v)), constraint,
                          branch)
        except InfeasibleError as exc:
            rows.append(SweepRow(float(v), None, excluded=True,
                                 reason=str(exc)))
            continue
        pn = normalize(p)
        triple = solve_cubic(cubic_coeffs_reduced(pn), tol=tol)
        rows.append(SweepRow(float(v), triple, params=p))

    # continuity pairing: greedy chain over non-excluded rows
    prev = None
    for i, row in enumerate(rows):
        if row.triple is None:
            continue
        if prev is not None:
            paired = _pair_to_previous(prev, row.triple.values)
            if paired != row.triple.values:
                t = row.triple
                rows[i] = SweepRow(row.axis_value,
                                   EigenTriple(paired[0], paired[1], paired[2],
                                               t.classification, t.coeffs,
                                               t.disc),
                                   params=row.params)
        prev = rows[i].triple.values
    return rows
