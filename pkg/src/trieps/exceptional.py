"""Exceptional points, third-order exceptional lines and the ES3 surface.

A third-order exceptional point (EP3) of the pseudo-Hermitian system is a
parameter point where the resolvent quantities A and B of the secular cubic
vanish together.  Under the pseudo-Hermiticity conditions this pair of
conditions has the closed polynomial form (normalized or raw units)

    e1 = (k1^2 + k1 k2 + k2^2)(d1^2 - 3 k2^2) + 3 k2^2 (g12^2+g13^2+g23^2)
    e2 = (k1 - k2) k1 d1^3 - 18 k2^2 g13 g23 g12 + xi d1 k2
    xi = (g12^2 + 9 k1 k2)(k1 - k2) - g13^2 (8 k1 + k2)
         + g23^2 (k1 + 8 k2) + 8 (k1^3 - k2^3)

and satisfies the exact identities e1 = k2^2 * A and e2 = -k2^2 * B.

In the PT-symmetric case (k1 = 0) the EP3 set projects onto a closed-form
curve in the coupling plane,

    4 g23^2 + 2 g13^2 + 3 * 4^(1/3) * g13^(4/3) k2^(2/3) - 4 k2^2 = 0,

the third-order exceptional line.  For k1 > 0 one line exists per value of
k1/k2; stacking lines over k1/k2 builds the third-order exceptional surface.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from .errors import (InfeasibleError, NoRootError, PreconditionError,
                     ValidationError)
from .model import SystemParams, detunings, normalize
from .pseudoherm import ConstraintMode, constrain, ph_residuals, pt_specialize
from .spectrum import (CubicCoeffs, SpectralClass, cubic_coeffs_reduced,
                       discriminants, solve_cubic, with_axis_value)


def ep3_residuals(p: SystemParams, tol: float = 1e-9) -> tuple[float, float]:
    """The two polynomial conditions (e1, e2) that vanish exactly at an EP3.

    Requires pseudo-Hermitian parameters (residuals checked in the
    normalized frame against ``tol``).
    """
    res = ph_residuals(normalize(p))
    if res.max_abs > tol:
        raise PreconditionError(
            "EP3 residuals are derived under pseudo-Hermiticity; "
            f"max constraint residual {res.max_abs:.3e} > {tol:.1e}")
    d1, _ = detunings(p)
    k1, k2 = p.kappa1, p.kappa2
    g12, g13, g23 = p.g12, p.g13, p.g23
    e1 = (k1 ** 2 + k1 * k2 + k2 ** 2) * (d1 ** 2 - 3.0 * k2 ** 2) \
        + 3.0 * k2 ** 2 * (g12 ** 2 + g13 ** 2 + g23 ** 2)
    xi = (g12 ** 2 + 9.0 * k1 * k2) * (k1 - k2) - g13 ** 2 * (8.0 * k1 + k2) \
        + g23 ** 2 * (k1 + 8.0 * k2) + 8.0 * (k1 ** 3 - k2 ** 3)
    e2 = (k1 - k2) * k1 * d1 ** 3 - 18.0 * k2 ** 2 * g13 * g23 * g12 \
        + xi * d1 * k2
    return e1, e2


def lambda_ep3(p: SystemParams) -> float:
    """Coalesced eigenvalue omega3 + (delta1 + delta2)/3 (meaningful at EP3s)."""
    d1, d2 = detunings(p)
    return p.omega3 + (d1 + d2) / 3.0


@dataclass(frozen=True)
class ExceptionalPoint:
    """A located spectral degeneracy of order 2 or 3."""

    order: int
    params: SystemParams
    lam: complex
    residuals: tuple[float, float, float]  # (A, B, Delta) at the point
    axis_value: float | None = None


@dataclass(frozen=True)
class MeshPoint:
    """One EP3 sample of an exceptional line or surface."""

    g13: float
    g23: float
    kappa1_ratio: float
    point: ExceptionalPoint


@dataclass(frozen=True)
class ManifoldMesh:
    """Sampled exceptional line (kind='EL3') or surface (kind='ES3').

    EL3 samples form one polyline ordered by g13; ES3 samples are a list of
    such polylines, one per kappa1/kappa2 slice (rows may be ragged).
    """

    kind: str
    samples: list
    metadata: dict = field(default_factory=dict)


# ---------------------------------------------------------------------------
# EP search along one parameter axis


def _ep_from_params(p: SystemParams, order: int, axis_value: float,
                    tol: float = 1e-9) -> ExceptionalPoint:
    pn = normalize(p)
    disc = discriminants(cubic_coeffs_reduced(pn, tol=tol))
    if order == 3:
        lam = complex(lambda_ep3(pn))
    else:
        # coalesced pair of an EP2: the double root of the cubic
        lam = complex(pn.omega3 - disc.B / (2.0 * disc.A))
    return ExceptionalPoint(order=order, params=pn, lam=lam,
                            residuals=(disc.A, disc.B, disc.Delta),
                            axis_value=axis_value)


def find_ep_along_axis(base: SystemParams, axis: str, lo: float, hi: float,
                       constraint: ConstraintMode = ConstraintMode.NONE,
                       tol: float = 1e-10, grid: int = 512, branch: int = +1,
                       class_tol: float = 1e-6, touch_tol: float = 1e-6,
                       near_tol: float = 1e-3) -> list[ExceptionalPoint]:
    """Locate EP2s and EP3s of the constrained spectrum along one axis.

    Three detectors run over a ``grid``-point scan of [lo, hi]:

    * sign changes of Delta, bisected to width ``tol`` and classified as EP3
      when the scaled |A| and |B| fall below ``class_tol``, else EP2;
    * sign changes of A (Delta touching zero without crossing): the
      candidate is kept when |Delta| <= ``touch_tol`` there, its position is
      refined to the minimum of |A| + |B|, and it is reported as an EP3 when
      the refined max(|A|, |B|) <= ``near_tol`` -- this catches coalescence
      points whose parameters are only approximately on an exceptional line;
    * feasibility boundaries of the constraint mode, where the solved
      detunings turn real; the boundary point itself is tested for A = B = 0
      (the symmetric/asymmetric slices have their EP3 exactly there).

    Returns points sorted by axis value; an empty list means no degeneracy,
    not an error.
    """
    if not lo < hi:
        raise ValidationError("need lo < hi")
    if grid < 8:
        raise ValidationError("grid too coarse")

    def params_at(v: float) -> SystemParams | None:
        try:
            return normalize(constrain(with_axis_value(base, axis, v),
                                       constraint, branch))
        except InfeasibleError:
            return None

    def disc_at(v: float):
        p = params_at(v)
        if p is None:
            return None
        return discriminants(cubic_coeffs_reduced(p))

    xs = np.linspace(lo, hi, grid)
    ds = [disc_at(float(x)) for x in xs]

    found: list[ExceptionalPoint] = []
    cell = (hi - lo) / (grid - 1)

    def bisect(f, a: float, b: float) -> float:
        fa, fb = f(a), f(b)
        while b - a > tol:
            m = 0.5 * (a + b)
            fm = f(m)
            if fm == 0.0:
                return m
            if (fa < 0) != (fm < 0):
                b, fb = m, fm
            else:
                a, fa = m, fm
        return 0.5 * (a + b)

    # -- detector 1: Delta sign changes -------------------------------------
    for i in range(grid - 1):
        da, db = ds[i], ds[i + 1]
        if da is None or db is None:
            continue
        if da.Delta == 0.0 or da.Delta * db.Delta >= 0.0:
            continue
        g = bisect(lambda v: disc_at(v).Delta, float(xs[i]), float(xs[i + 1]))
        p = params_at(g)
        dd = discriminants(cubic_coeffs_reduced(p))
        s = cubic_coeffs_reduced(p).scale
        order = 3 if (abs(dd.A) <= class_tol * s and abs(dd.B) <= class_tol * s) else 2
        found.append(_ep_from_params(p, order, g))

    # -- detector 2: A sign changes where Delta only touches zero -----------
    for i in range(grid - 1):
        da, db = ds[i], ds[i + 1]
        if da is None or db is None:
            continue
        if da.A == 0.0 or da.A * db.A >= 0.0:
            continue
        g = bisect(lambda v: disc_at(v).A, float(xs[i]), float(xs[i + 1]))
        dd = disc_at(g)
        s = cubic_coeffs_reduced(params_at(g)).scale
        if abs(dd.Delta) > touch_tol * s ** 2:
            continue

        # refine to the best-coalescence point nearby
        def coalescence(v: float) -> float:
            dv = disc_at(v)
            return math.inf if dv is None else abs(dv.A) + abs(dv.B)

        res = minimize_scalar(
            coalescence,
            bounds=(max(lo, g - cell), min(hi, g + cell)),
            method="bounded", options={"xatol": 1e-13})
        g = float(res.x)
        dd = disc_at(g)
        if max(abs(dd.A), abs(dd.B)) > near_tol * s:
            continue
        if any(ep.order == 3 and abs(ep.axis_value - g) <= cell for ep in found):
            continue
        # a near-EP3 supersedes the EP2 pair bracketing it
        found = [ep for ep in found
                 if not (ep.order == 2 and abs(ep.axis_value - g) <= cell)]
        found.append(_ep_from_params(params_at(g), 3, g))

    # -- detector 3: feasibility boundaries of the constraint mode ----------
    for i in range(grid - 1):
        da, db = ds[i], ds[i + 1]
        if (da is None) == (db is None):
            continue
        a, b = float(xs[i]), float(xs[i + 1])
        a_feasible = da is not None
        while b - a > max(tol, 1e-13):
            m = 0.5 * (a + b)
            if (disc_at(m) is not None) == a_feasible:
                a = m
            else:
                b = m
        g = a if a_feasible else b  # innermost feasible point
        p = params_at(g)
        if p is None:
            continue
        # at the mathematical boundary the detuning radicand is exactly
        # zero; snap the solved detunings accordingly before testing A = B
        p = p.replace(omega1=p.omega3, omega2=p.omega3)
        dd = discriminants(cubic_coeffs_reduced(p))
        s = cubic_coeffs_reduced(p).scale
        if abs(dd.A) <= class_tol * s and abs(dd.B) <= class_tol * s:
            if not any(abs(ep.axis_value - g) <= cell for ep in found):
                found.append(_ep_from_params(p, 3, g))

    found.sort(key=lambda ep: ep.axis_value)
    return found


# ---------------------------------------------------------------------------
# PT-symmetric exceptional line (closed form)


def pt_el3_g23(g13: float, kappa2: float = 1.0) -> float:
    """g23 on the PT exceptional line, from the closed-form rearrangement.

    Valid for 0 <= g13/kappa2 <= 1/sqrt(2); tiny negative radicands at the
    right endpoint are clamped to zero.
    """
    if kappa2 <= 0:
        raise ValidationError("kappa2 must be positive")
    if g13 < 0 or g13 > kappa2 / math.sqrt(2.0) * (1 + 1e-12):
        raise NoRootError(
            f"g13={g13!r} outside the PT exceptional line footprint "
            f"[0, {kappa2 / math.sqrt(2.0)!r}]")
    rad = (kappa2 ** 2 - g13 ** 2 / 2.0
           - 0.75 * 4.0 ** (1.0 / 3.0) * g13 ** (4.0 / 3.0) * kappa2 ** (2.0 / 3.0))
    return math.sqrt(max(rad, 0.0))


def pt_el3_delta1(g13: float, g23: float, kappa2: float = 1.0) -> float:
    """Cavity-1 detuning on the PT exceptional line (<= 0 on the curve)."""
    den = 4.0 * g23 ** 2 - g13 ** 2 - 4.0 * kappa2 ** 2
    if den == 0.0:
        return 0.0
    return 9.0 * g23 * g13 ** 2 / den


def el3_pt(samples: int, kappa2: float = 1.0) -> ManifoldMesh:
    """PT-symmetric exceptional line, sampled over its full footprint.

    Endpoints (g13 = 0, g23 = kappa2) and (g13 = kappa2/sqrt(2), g23 = 0)
    are included exactly.  Every sample is completed to a full EP3 parameter
    set and carries its residuals.
    """
    if samples < 2:
        raise ValidationError("samples must be >= 2")
    gmax = kappa2 / math.sqrt(2.0)
    pts = []
    for idx, g13 in enumerate(np.linspace(0.0, gmax, samples)):
        g13 = float(g13)
        # both endpoints are exact: (0, kappa2) and (kappa2/sqrt(2), 0)
        g23 = 0.0 if idx == samples - 1 else pt_el3_g23(g13, kappa2)
        d1 = pt_el3_delta1(g13, g23, kappa2) if 0.0 < g13 < gmax else 0.0
        p = pt_specialize(kappa2, g13, g23, d1)
        ep = _ep_from_params(p, 3, g13)
        pts.append(MeshPoint(g13 / kappa2, g23 / kappa2, 0.0, ep))
    return ManifoldMesh(kind="EL3", samples=pts, metadata={
        "kappa1_ratio": 0.0,
        "footprint": (0.0, gmax / kappa2),
        "convention": "PT slice: kappa1=0, delta2=0, g12=g13",
    })


# ---------------------------------------------------------------------------
# General exceptional lines at fixed kappa1/kappa2 and the ES3 surface
#
# Working in the normalized frame (kappa2=1, kappa1=kap) with u = delta1^2,
# v = g12^2, w = g23^2, the first EP3 condition and the third
# pseudo-Hermiticity condition are linear in (u, v, w):
#
#   e1:  K u + 3 v + 3 w = 3 K - 3 g13^2,         K = kap^2 + kap + 1
#   r3:  -kap(1+kap) u - (1+kap) v + kap w = kap(1+kap) - g13^2
#
# For fixed g13 and signed s = delta1 they leave one degree of freedom;
# (v, w) follow linearly from u = s^2 and the second EP3 condition e2(s) = 0
# closes the system.  The curve is traced in g13 with continuity in s, which
# resolves the sign of delta1 without assuming a global branch (it flips
# across the g13 = g23 diagonal when kappa1 = kappa2).


def _vw_from_u(u: float, g13: float, kap: float) -> tuple[float, float]:
    K = kap * kap + kap + 1.0
    r1 = 3.0 * K - 3.0 * g13 ** 2 - K * u
    r2 = kap * (1.0 + kap) - g13 ** 2 + kap * (1.0 + kap) * u
    det = 3.0 * kap + 3.0 * (1.0 + kap)
    v = (kap * r1 - 3.0 * r2) / det
    w = (3.0 * r2 + (1.0 + kap) * r1) / det
    return v, w


def _e2_signed(s: float, g13: float, kap: float) -> float | None:
    u = s * s
    v, w = _vw_from_u(u, g13, kap)
    if v < -1e-14 or w < -1e-14:
        return None
    v, w = max(v, 0.0), max(w, 0.0)
    g12, g23 = math.sqrt(v), math.sqrt(w)
    xi = (v + 9.0 * kap) * (kap - 1.0) - g13 ** 2 * (8.0 * kap + 1.0) \
        + w * (kap + 8.0) + 8.0 * (kap ** 3 - 1.0)
    return (kap - 1.0) * kap * s ** 3 - 18.0 * g13 * g23 * g12 + xi * s


def _feasible_u_interval(g13: float, kap: float) -> tuple[float, float] | None:
    # v(u), w(u) are affine; intersect {v >= 0} and {w >= 0} with u >= 0.
    v0, w0 = _vw_from_u(0.0, g13, kap)
    v1, w1 = _vw_from_u(1.0, g13, kap)
    lo, hi = 0.0, math.inf
    for f0, df in ((v0, v1 - v0), (w0, w1 - w0)):
        if df == 0.0:
            if f0 < 0.0:
                return None
        elif df > 0.0:
            lo = max(lo, -f0 / df)
        else:
            hi = min(hi, -f0 / df)
    if not lo < hi:
        return None
    return lo, min(hi, 3.0)  # delta1^2 <= 3 kappa2^2 always holds at an EP3


def el3_footprint(kap: float) -> tuple[float, float]:
    """g13/kappa2 interval covered by the exceptional line at kappa1/kappa2=kap."""
    return 0.0, math.sqrt((1.0 + kap) ** 3 / (2.0 + kap))


def el3_axis_intercept(kap: float) -> float:
    """g23/kappa2 where the exceptional line meets the g13 = 0 axis."""
    return math.sqrt((1.0 + kap) ** 3 / (1.0 + 2.0 * kap))


def _el3_roots_at(g13: float, kap: float, nscan: int = 600) -> list[float]:
    iv = _feasible_u_interval(g13, kap)
    if iv is None:
        return []
    lo, hi = iv
    smax = math.sqrt(hi)
    smin = math.sqrt(lo) if lo > 0.0 else 0.0
    segments = ([(-smax, -smin), (smin, smax)] if smin > 0.0
                else [(-smax, smax)])
    roots: list[float] = []
    for a, b in segments:
        ss = np.linspace(a, b, nscan)
        vals = np.array([_e2_signed(float(s), g13, kap) for s in ss],
                        dtype=float)
        ok = np.isfinite(vals)
        for i in range(nscan - 1):
            if not (ok[i] and ok[i + 1]):
                continue
            if vals[i] == 0.0:
                roots.append(float(ss[i]))
            elif vals[i] * vals[i + 1] < 0.0:
                roots.append(brentq(lambda s: _e2_signed(s, g13, kap),
                                    float(ss[i]), float(ss[i + 1]),
                                    xtol=1e-15))
        if ok[-1] and vals[-1] == 0.0:
            roots.append(float(ss[-1]))
    # collapse duplicates from touching brackets
    roots.sort()
    out: list[float] = []
    for r in roots:
        if not out or abs(r - out[-1]) > 1e-12:
            out.append(r)
    return out


def _el3_point(g13: float, s: float, kap: float,
               endpoint: bool = False) -> tuple[SystemParams, float]:
    u = s * s
    if endpoint:
        # right endpoint is exact: g23 = 0, delta1 = 0, g12^2 = 1/(2 + kap)
        v, w = 1.0 / (2.0 + kap), 0.0
    else:
        v, w = _vw_from_u(u, g13, kap)
        v, w = max(v, 0.0), max(w, 0.0)
    d1, d2 = s, -kap * s
    p = SystemParams(
        omega1=d1, omega2=d2, omega3=0.0,
        kappa1=kap, kappa2=1.0, kappa3=-(1.0 + kap),
        g12=math.sqrt(v), g13=g13, g23=math.sqrt(w))
    return p, math.sqrt(w)


def el3_general(kappa1_over_kappa2: float, samples: int,
                nscan: int = 600) -> ManifoldMesh:
    """Exceptional line in the (g13/k2, g23/k2) plane at fixed kappa1/kappa2.

    Solves the two EP3 conditions together with the pseudo-Hermiticity
    conditions, eliminating g12 and the detunings; delta1's sign branch is
    chosen by continuity from the g13 = 0 intercept (delta1 = 0 there).
    At kappa1 = 0 this reproduces the PT closed-form line.
    """
    kap = float(kappa1_over_kappa2)
    if kap < 0:
        raise ValidationError("kappa1/kappa2 must be >= 0")
    if samples < 2:
        raise ValidationError("samples must be >= 2")
    g_lo, g_hi = el3_footprint(kap)

    pts: list[MeshPoint] = []
    s_prev = 0.0
    for idx, g13 in enumerate(np.linspace(g_lo, g_hi, samples)):
        g13 = float(g13)
        endpoint = idx == samples - 1
        if endpoint:
            s = 0.0
        else:
            roots = _el3_roots_at(g13, kap, nscan=nscan)
            if not roots:
                raise NoRootError(
                    f"no EP3 root at g13={g13!r} for kappa1/kappa2={kap!r} "
                    f"(footprint {g_lo!r}..{g_hi!r})")
            s = min(roots, key=lambda r: abs(r - s_prev))
        p, g23 = _el3_point(g13, s, kap, endpoint=endpoint)
        ep = _ep_from_params(p, 3, g13)
        pts.append(MeshPoint(g13, g23, kap, ep))
        s_prev = s
    return ManifoldMesh(kind="EL3", samples=pts, metadata={
        "kappa1_ratio": kap,
        "footprint": (g_lo, g_hi),
        "convention": ("g12 eliminated through the third pseudo-Hermiticity "
                       "condition; delta1 branch traced by continuity from "
                       "the g13=0 intercept"),
    })


def es3_scan(kappa1_lo: float, kappa1_hi: float, slices: int,
             samples: int) -> ManifoldMesh:
    """Stack of exceptional lines over kappa1/kappa2: the EP3 surface mesh.

    Includes the PT-symmetric line when kappa1_lo = 0.  Rows are ragged
    (each carries its own footprint).
    """
    if not 0 <= kappa1_lo < kappa1_hi:
        raise ValidationError("need 0 <= kappa1_lo < kappa1_hi")
    if slices < 2:
        raise ValidationError("slices must be >= 2")
    rows = []
    for kap in np.linspace(kappa1_lo, kappa1_hi, slices):
        rows.append(el3_general(float(kap), samples).samples)
    return ManifoldMesh(kind="ES3", samples=rows, metadata={
        "kappa1_range": (kappa1_lo, kappa1_hi),
        "slices": slices,
        "samples_per_slice": samples,
    })
