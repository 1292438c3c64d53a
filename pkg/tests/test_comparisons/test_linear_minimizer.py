#!/usr/bin/env python
# Created by "Thieu" at 10:15, 17/10/2026 ----------%
#       Email: nguyenthieu2102@gmail.com            %
#       Github: https://github.com/thieu1995        %
# --------------------------------------------------%

import itertools

import numpy as np
import pytest

from tancert import bestapprox as ba
from tancert import geometry as geo

LINE = np.linspace(-1, 1, 401)
GRID = np.array(np.meshgrid(LINE, LINE)).reshape(2, -1).T


def _random_pair(seed):
    ## the square [-1, 1]^2 cut by up to three halfspaces that keep the origin inside
    rng = np.random.default_rng(seed)
    A, b = [[1, 0], [-1, 0], [0, 1], [0, -1]], [1.0, 1.0, 1.0, 1.0]
    for _ in range(int(rng.integers(1, 4))):
        a = rng.normal(size=2)
        A.append((a / np.linalg.norm(a)).tolist())
        b.append(float(rng.uniform(0.2, 0.8)))
    u = rng.normal(size=2)
    return geo.Polyhedron.from_arrays(A, b, 2), u / np.linalg.norm(u)


def _vertices(H):
    out = []
    for i, j in itertools.combinations(range(H.A.shape[0]), 2):
        M = H.A[[i, j]]
        if abs(np.linalg.det(M)) > 1e-9:
            v = np.linalg.solve(M, H.b[[i, j]])
            if H.contains(v, 1e-9):
                out.append(v)
    return out


@pytest.mark.parametrize("seed", range(50))
def test_minimizer_iff_normal_cone(seed):
    H, u = _random_pair(seed)
    y_star = geo.lp_solve(H, u, sense="max").witness
    best = float(u @ y_star)
    ## grid minimisation of <-u, .> over H agrees with the LP value
    feasible = GRID[H.contains_batch(GRID, 1e-12)]
    grid_best = float(np.max(feasible @ u))
    assert best - 0.05 <= grid_best <= best + 1e-9

    assert ba.is_linear_minimizer(H, u, y_star)
    assert geo.cone_contains(geo.normal_cone(H, y_star), u)
    for v in _vertices(H) + [np.zeros(2)]:
        res11 = ba.is_linear_minimizer(H, u, v)
        res12 = geo.cone_contains(geo.normal_cone(H, v), u)
        assert res11 == res12
        assert res11 == bool(u @ v >= best - 1e-9)
