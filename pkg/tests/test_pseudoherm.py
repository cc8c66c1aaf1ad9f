import math

import numpy as np
import pytest

from trieps import (ConstraintMode, InfeasibleError, SystemParams,
                    build_matrix, constrain, detunings, eigensolve_oracle,
                    embed_solution, is_pseudo_hermitian, ph_residuals,
                    pt_specialize, solve_constraints, spectral_symmetry_check)
from helpers import multiset_distance, random_feasible_params


def pt_params(delta1=0.3, g13=0.5, g23=0.25, kappa2=1.0):
    return pt_specialize(kappa2, g13, g23, delta1)


def test_ph_residuals_pt_case_zero():
    res = ph_residuals(pt_params())
    assert (res.r1, res.r2, res.r3) == (0.0, 0.0, 0.0)


def test_ph_residuals_symmetric_slice_zero():
    # kappa1 = kappa2, g12 = 0, g23 = g13, delta2 = sqrt(g13^2 - kappa2^2)
    g13 = 1.2
    d2 = math.sqrt(g13 ** 2 - 1.0)
    p = SystemParams(-d2, d2, 0.0, 1.0, 1.0, -2.0, 0.0, g13, g13)
    assert ph_residuals(p).max_abs < 1e-15


def test_ph_residuals_unbalanced():
    p = SystemParams(0, 0, 0, 1.0, 1.0, 1.0, 0.3, 0.3, 0.3)
    assert ph_residuals(p).r1 == 3.0


def test_is_pseudo_hermitian_threshold():
    p = pt_params()
    assert is_pseudo_hermitian(p, tol=1e-9)
    bad = p.replace(g12=p.g12 + 1e-3)
    assert not is_pseudo_hermitian(bad, tol=1e-9)


def test_is_pseudo_hermitian_asymmetric_slice():
    g13 = math.sqrt(8.0 / 3.0)
    d2 = math.sqrt(3.0 * g13 ** 2 / 8.0 - 1.0)
    p = SystemParams(-d2, d2, 0.0, 1.0, 1.0, -2.0, g13 / math.sqrt(8.0),
                     g13, 0.0)
    assert is_pseudo_hermitian(p, tol=1e-9)


def test_solve_constraints_symmetric_slice():
    sol = solve_constraints(1.0, 1.0, 0.0, 1.2, 1.2)
    assert sol.feasible
    assert sol.kappa3 == -2.0
    assert sol.delta2 == pytest.approx(math.sqrt(1.2 ** 2 - 1.0), abs=1e-12)
    assert sol.delta1 == pytest.approx(-sol.delta2, abs=1e-15)


def test_solve_constraints_symmetric_slice_range():
    # delta2 = sqrt(g13^2 - kappa2^2) across the slice
    for g13 in np.linspace(1.0, 3.0, 41):
        sol = solve_constraints(1.0, 1.0, 0.0, float(g13), float(g13))
        assert sol.feasible
        assert abs(sol.delta2 - math.sqrt(g13 ** 2 - 1.0)) < 1e-12


def test_solve_constraints_asymmetric_slice():
    sol = solve_constraints(1.0, 1.0, 1.5 / math.sqrt(8.0), 1.5, 0.0)
    assert not sol.feasible
    assert sol.radicand == pytest.approx(-0.15625, abs=1e-15)
    g_min = math.sqrt(8.0 / 3.0)
    sol2 = solve_constraints(1.0, 1.0, g_min / math.sqrt(8.0), g_min, 0.0)
    assert sol2.feasible
    assert abs(sol2.delta2) < 1e-7


def test_solve_constraints_branch_sign():
    lo = solve_constraints(1.0, 1.0, 0.0, 1.5, 1.5, branch=-1)
    hi = solve_constraints(1.0, 1.0, 0.0, 1.5, 1.5, branch=+1)
    assert lo.delta2 == -hi.delta2


def test_solve_constraints_neutral_cavity1():
    sol = solve_constraints(0.0, 1.0, 0.5, 0.5, 0.77)
    assert sol.feasible and sol.delta1_free
    assert sol.kappa3 == -1.0 and sol.delta2 == 0.0
    bad = solve_constraints(0.0, 1.0, 0.4, 0.5, 0.77)
    assert not bad.feasible


def test_solve_constraints_roundtrip():
    rng = np.random.default_rng(11)
    for p in random_feasible_params(rng, 300):
        assert is_pseudo_hermitian(p, tol=1e-9)


def test_embed_solution_residuals():
    sol = solve_constraints(0.7, 1.3, 0.2, 1.9, 1.1)
    if sol.feasible:
        p = embed_solution(sol, 0.7, 1.3, 0.2, 1.9, 1.1)
        assert ph_residuals(p).max_abs < 1e-10


def test_pt_specialize_fig_configs():
    green = pt_specialize(1.0, 1.0 / math.sqrt(2.0), 0.0, 0.0)
    assert ph_residuals(green).max_abs == 0.0
    assert green.kappa1 == 0.0 and green.kappa3 == -1.0
    assert green.g12 == green.g13

    purple = pt_specialize(1.0, 0.4, 0.754, -0.5768)
    assert detunings(purple) == (-0.5768, 0.0)

    uncoupled = pt_specialize(1.0, 0.0, 0.0, 0.0)
    ev = eigensolve_oracle(build_matrix(uncoupled))
    assert multiset_distance(ev, [0.0, -1.0j, 1.0j]) < 1e-12


def test_kappa1_to_zero_limit():
    # with g12 = g13 the solved delta2 vanishes continuously as kappa1 -> 0;
    # feasibility needs g23^2 > g13^2 + kappa2*(kappa1 + kappa2)
    prev = None
    for k1 in [0.5, 0.1, 0.02, 0.004, 0.0008]:
        sol = solve_constraints(k1, 1.0, 0.5, 0.5, 1.5)
        assert sol.feasible
        d2 = abs(sol.delta2)
        if prev is not None:
            assert d2 < prev
        prev = d2
    assert prev < 1e-3


def test_spectral_symmetry_check_examples():
    assert spectral_symmetry_check([0.0, 1.0, -1.0], tol=1e-12)
    assert spectral_symmetry_check([0.0, 0.3 + 0.2j, 0.3 - 0.2j], tol=1e-12)
    assert not spectral_symmetry_check([0.0, 0.3 + 0.2j, 0.4 - 0.2j], tol=1e-6)


def test_spectral_symmetry_of_feasible_draws():
    rng = np.random.default_rng(12)
    for p in random_feasible_params(rng, 400):
        ev = eigensolve_oracle(build_matrix(p))
        assert spectral_symmetry_check(ev, tol=1e-7)


def test_constrain_modes():
    base = SystemParams(0.0, 0.0, 0.0, 1.0, 1.0, -2.0, 0.0, 1.4, 1.4)
    sym = constrain(base, ConstraintMode.PH_SYMMETRIC)
    assert ph_residuals(sym).max_abs < 1e-12
    assert sym.g23 == sym.g13 and sym.g12 == 0.0

    asym = constrain(base.replace(g13=1.7), ConstraintMode.PH_ASYMMETRIC)
    assert asym.g23 == 0.0
    assert asym.g12 == pytest.approx(1.7 / math.sqrt(8.0))
    assert ph_residuals(asym).max_abs < 1e-12

    with pytest.raises(InfeasibleError):
        constrain(base.replace(g13=0.5), ConstraintMode.PH_SYMMETRIC)

    pt = constrain(base.replace(omega1=0.2), ConstraintMode.PT)
    assert pt.kappa1 == 0.0 and pt.kappa3 == -1.0
    assert detunings(pt) == (0.2, 0.0)

    same = constrain(base, ConstraintMode.NONE)
    assert same == base
