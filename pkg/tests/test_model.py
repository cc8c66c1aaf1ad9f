import numpy as np
import pytest

from trieps import (SystemParams, ValidationError, build_matrix, detunings,
                    eigensolve_oracle, normalize)
from helpers import multiset_distance, random_valid_params


def test_build_matrix_pt_case():
    # neutral cavity 1, balanced 2/3 pair, g12 = g13 = 0.5
    p = SystemParams(0, 0, 0, 0.0, 1.0, -1.0, 0.5, 0.5, 0.0)
    H = build_matrix(p)
    np.testing.assert_allclose(np.diag(H), [0.0, -1.0j, 1.0j])
    assert H[0, 1] == 0.5 and H[0, 2] == 0.5 and H[1, 2] == 0.0


def test_build_matrix_uncoupled_diagonal():
    p = SystemParams(1, 2, 3, 0.0, 1.0, -1.0, 0.0, 0.0, 0.0)
    H = build_matrix(p)
    np.testing.assert_allclose(H, np.diag([1.0, 2.0 - 1.0j, 3.0 + 1.0j]))


def test_build_matrix_symmetric_and_trace():
    rng = np.random.default_rng(1)
    for p in random_valid_params(rng, 50):
        H = build_matrix(p)
        np.testing.assert_array_equal(H, H.T)
        expected_trace = (p.omega1 + p.omega2 + p.omega3
                          - 1j * (p.kappa1 + p.kappa2 + p.kappa3))
        assert H.trace() == expected_trace


def test_detunings():
    assert detunings(SystemParams(5, 5, 5, 0, 1, -1, 0, 0, 0)) == (0.0, 0.0)
    p = SystemParams(-0.5768, 0.0, 0.0, 0.0, 1.0, -1.0, 0.4, 0.4, 0.7544)
    assert detunings(p) == (-0.5768, 0.0)
    assert detunings(SystemParams(2, 3, 1, 0, 1, -1, 0, 0, 0)) == (1.0, 2.0)


def test_normalize_scaling():
    p = SystemParams(0, 0, 0, 0.0, 2.0, -2.0, 1.414, 1.414, 0.0)
    q = normalize(p)
    assert q.kappa2 == 1.0
    assert q.g13 == pytest.approx(0.707)
    assert q.omega3 == 0.0


def test_normalize_idempotent():
    rng = np.random.default_rng(2)
    for p in random_valid_params(rng, 25):
        q = normalize(p)
        assert normalize(q) == q


def test_normalize_spectrum_relation():
    # eigenvalues of the normalized matrix are (lambda - omega3)/kappa2
    rng = np.random.default_rng(3)
    for p in random_valid_params(rng, 50):
        ev_raw = eigensolve_oracle(build_matrix(p))
        ev_norm = eigensolve_oracle(build_matrix(normalize(p)))
        expected = (ev_raw - p.omega3) / p.kappa2
        scale = max(1.0, np.max(np.abs(expected)))
        assert multiset_distance(ev_norm, expected) < 1e-10 * scale


@pytest.mark.parametrize("kwargs", [
    dict(kappa2=0.0),
    dict(kappa2=-1.0),
    dict(g12=-0.1),
    dict(g13=-1e-9),
    dict(omega1=float("nan")),
    dict(kappa3=float("inf")),
])
def test_validation_rejects(kwargs):
    base = dict(omega1=0, omega2=0, omega3=0, kappa1=0, kappa2=1, kappa3=-1,
                g12=0.1, g13=0.1, g23=0.1)
    base.update(kwargs)
    with pytest.raises(ValidationError):
        SystemParams(**base)
