#!/usr/bin/env python
# Created by "Thieu" at 09:12, 07/09/2026 ----------%
#       Email: nguyenthieu2102@gmail.com            %
#       Github: https://github.com/thieu1995        %
# --------------------------------------------------%

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tancert import geometry as geo
from tancert.utils.exception import InfeasibleError, InputError, PreconditionError


@pytest.fixture(scope="module")  # scope: Call only 1 time at the beginning
def data():
    box = geo.Polyhedron.from_arrays([[1, 0], [-1, 0], [0, 1], [0, -1]], [1, 0, 1, 0])
    orthant_h = geo.ConeH(np.array([[-1.0, 0.0], [0.0, -1.0]]), 2)
    orthant_fg = geo.ConeFG(np.eye(2), 2)
    return box, orthant_h, orthant_fg


def test_halfspace_normalized():
    h = geo.Halfspace([3.0, 4.0], 10.0)
    assert np.allclose(h.normal, [0.6, 0.8])
    assert h.offset == pytest.approx(2.0)
    with pytest.raises(InputError):
        geo.Halfspace([0.0, 0.0], 1.0)


def test_simplex_standard():
    ## min -x1 - x2 subject to x1 + x2 + s = 1
    status, z, obj = geo.simplex_standard([[1, 1, 1]], [1], [-1, -1, 0])
    assert status == geo.FEASIBLE
    assert obj == pytest.approx(-1.0)
    assert z.sum() == pytest.approx(1.0)


def test_lp_solve(data):
    box = data[0]
    res = geo.lp_solve(box, [1, 1], sense="max")
    assert res.status == geo.FEASIBLE
    assert res.objective == pytest.approx(2.0)
    assert np.allclose(res.witness, [1, 1])
    ## unbounded below
    res = geo.lp_solve([geo.Halfspace([1.0], 1.0)], [1.0])
    assert res.status == geo.UNBOUNDED
    with pytest.raises(InputError):
        geo.lp_solve(box, [1, 1], sense="best")


def test_lp_solve_infeasible_farkas():
    P = geo.Polyhedron.from_arrays([[1.0], [-1.0]], [0.0, -1.0])
    res = geo.lp_solve(P)
    assert res.status == geo.INFEASIBLE
    y = res.farkas
    assert np.all(y >= -1e-12)
    assert np.allclose(P.A.T @ y, 0, atol=1e-9)
    assert P.b @ y < 0
    assert P.is_empty()


def test_ray_representation(data):
    _, orthant_h, orthant_fg = data
    R = geo.ray_representation(orthant_h)
    assert geo.cones_equal(R, orthant_fg)
    whole = geo.ray_representation(geo.ConeH(np.zeros((0, 2)), 2))
    assert whole.rays.shape[0] == 4
    assert geo.cone_contains(whole, [-3.0, 2.0])
    ## halfplane x1 <= 0: lineality along x2 and the ray -e1
    half = geo.ray_representation(geo.ConeH(np.array([[1.0, 0.0]]), 2))
    assert geo.cone_contains(half, [0.0, -5.0])
    assert geo.cone_contains(half, [-1.0, 2.0])
    assert not geo.cone_contains(half, [1.0, 0.0])


def test_polars(data):
    _, orthant_h, orthant_fg = data
    assert geo.cones_equal(geo.polar_fg(orthant_fg), orthant_h)
    assert geo.cones_equal(geo.polar_h(orthant_h), geo.ConeFG(-np.eye(2), 2))
    zero = geo.ConeFG(np.zeros((0, 2)), 2)
    assert geo.polar_fg(zero).is_whole_space()
    assert geo.polar_h(geo.ConeH(np.zeros((0, 2)), 2)).is_zero()


def test_cone_contains_and_distance(data):
    orthant_fg = data[2]
    assert geo.cone_contains(orthant_fg, [1.0, 2.0])
    assert not geo.cone_contains(orthant_fg, [-1.0, 0.0])
    assert geo.cone_contains(orthant_fg, [0.0, 0.0])
    assert geo.cone_distance(orthant_fg, [-1.0, 1.0]) == pytest.approx(1.0)
    assert geo.cone_distance(geo.ConeFG(np.zeros((0, 2)), 2), [3.0, 4.0]) == pytest.approx(5.0)


def test_conic_fit():
    mu, residual = geo.conic_fit(np.eye(2), [1.0, -1.0])
    assert residual == pytest.approx(1.0)
    assert mu[0] == pytest.approx(1.0)


def test_normal_cone(data):
    box = data[0]
    corner = geo.normal_cone(box, [1.0, 1.0])
    assert geo.cones_equal(corner, geo.ConeFG(np.eye(2), 2))
    assert geo.normal_cone(box, [0.5, 0.5]).is_zero()
    with pytest.raises(PreconditionError):
        geo.normal_cone(box, [2.0, 0.0])


def test_project_polyhedron(data):
    box = data[0]
    assert np.allclose(geo.project_polyhedron(box, [2.0, -1.0]), [1.0, 0.0])
    assert np.allclose(geo.project_polyhedron(box, [0.5, 3.0]), [0.5, 1.0])
    assert np.allclose(geo.project_polyhedron(box, [0.2, 0.3]), [0.2, 0.3])
    empty = geo.Polyhedron.from_arrays([[1.0], [-1.0]], [0.0, -1.0])
    with pytest.raises(InfeasibleError):
        geo.project_polyhedron(empty, [3.0])


def test_minkowski_sum_fg():
    c = geo.minkowski_sum_fg(geo.ConeFG([[1.0, 0.0]], 2), geo.ConeFG([[0.0, 2.0]], 2))
    assert c.rays.shape[0] == 2
    assert geo.cone_contains(c, [1.0, 1.0])
    with pytest.raises(InputError):
        geo.minkowski_sum_fg(geo.ConeFG([[1.0]], 1), geo.ConeFG([[1.0, 0.0]], 2))


def test_hull_helpers():
    square = np.array([[0, 0], [1, 0], [0, 1], [1, 1]], dtype=float)
    assert geo.convex_combination(square, [0.5, 0.5])
    assert not geo.convex_combination(square, [2.0, 0.0])
    assert geo.distance_to_hull([2.0, 0.5], square) == pytest.approx(1.0)
    assert geo.hausdorff_distance([[0.0], [1.0]], [[0.0], [2.0]]) == pytest.approx(1.0)


rays_2d = st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3)).filter(lambda r: r != (0, 0)),
                   min_size=1, max_size=3)


@settings(max_examples=50, deadline=None)
@given(rays_2d)
def test_polar_involution(rays):
    c = geo.ConeFG(np.array(rays, dtype=float), 2)
    polar = geo.ray_representation(geo.polar_fg(c))
    bipolar = geo.ray_representation(geo.polar_fg(polar))
    assert geo.cones_equal(bipolar, c, 1e-7)


@settings(max_examples=50, deadline=None)
@given(rays_2d, st.tuples(st.floats(-5, 5), st.floats(-5, 5)))
def test_cone_membership_matches_polar(rays, v):
    ## v in c iff <a, v> <= 0 for every generator a of the polar
    c = geo.ConeFG(np.array(rays, dtype=float), 2)
    polar = geo.ray_representation(geo.polar_fg(c))
    v = np.array(v)
    margin = polar.rays @ v if polar.rays.shape[0] else np.zeros(1)
    if np.max(margin) < -1e-3 or np.max(margin) > 1e-3:
        assert geo.cone_contains(c, v, 1e-7) == bool(np.max(margin) <= 0)
