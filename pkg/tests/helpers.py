"""Shared test utilities."""

from itertools import permutations

import numpy as np

from trieps import SystemParams, solve_constraints, embed_solution


def multiset_distance(a, b) -> float:
    """Best-assignment max distance between two triples of complex numbers."""
    a = [complex(z) for z in a]
    b = [complex(z) for z in b]
    return min(max(abs(a[i] - p[i]) for i in range(len(a)))
               for p in permutations(b))


def random_valid_params(rng, n):
    """Generic (not necessarily pseudo-Hermitian) parameter draws."""
    for _ in range(n):
        om = rng.uniform(-2.0, 2.0, 3)
        ka = rng.uniform(-2.0, 2.0, 3)
        ka[1] = rng.uniform(0.1, 2.0)
        g = rng.uniform(0.0, 2.0, 3)
        yield SystemParams(om[0], om[1], om[2], ka[0], ka[1], ka[2],
                           g[0], g[1], g[2])


def random_feasible_params(rng, n, max_draws=None):
    """Pseudo-Hermitian draws from the constraint solver (both branches)."""
    produced = 0
    draws = 0
    limit = max_draws if max_draws is not None else 50 * n
    while produced < n and draws < limit:
        draws += 1
        k1 = rng.uniform(0.0, 3.0)
        k2 = rng.uniform(0.2, 3.0)
        g12, g13, g23 = rng.uniform(0.0, 3.0, 3)
        branch = 1 if rng.random() < 0.5 else -1
        sol = solve_constraints(k1, k2, g12, g13, g23, branch)
        if not sol.feasible:
            continue
        d1 = rng.uniform(-1.0, 1.0) if sol.delta1_free else 0.0
        yield embed_solution(sol, k1, k2, g12, g13, g23, delta1=d1)
        produced += 1
    if produced < n:
        raise RuntimeError("feasible sampler exhausted its draw budget")
