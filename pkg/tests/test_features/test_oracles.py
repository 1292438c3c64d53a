#!/usr/bin/env python
# Created by "Thieu" at 17:10, 07/09/2026 ----------%
#       Email: nguyenthieu2102@gmail.com            %
#       Github: https://github.com/thieu1995        %
# --------------------------------------------------%

import numpy as np
import pytest

from tancert import corpus
from tancert import geometry as geo
from tancert import oracles as orc
from tancert.utils import constant as co
from tancert.utils.exception import InconclusiveError, InputError

BOX = np.array([[-2.0, 2.0], [-2.0, 2.0]])


@pytest.fixture(scope="module")  # scope: Call only 1 time at the beginning
def data():
    disk = orc.FeasibilityOracle.from_predicate(lambda x: x @ x <= 1.0, 2, "disk")
    quadrant = orc.FeasibilityOracle.from_predicate(lambda x: x[0] <= 0 and x[1] <= 0, 2, "quadrant")
    return disk, quadrant


def test_oracle_from_instance():
    ex42 = corpus.load_fixture("ex42")
    k = orc.FeasibilityOracle.from_instance(ex42, "K")
    c = orc.FeasibilityOracle.from_instance(ex42, "C")
    kt = orc.FeasibilityOracle.from_instance(ex42, "K_tilde")
    assert k([2.0]) and c([2.0]) and kt([2.0])
    assert c([3.5]) and not k([3.5]) and not kt([3.5])
    assert kt.contains([[1.0], [0.0], [3.0]]).tolist() == [True, False, True]
    with pytest.raises(InputError):
        orc.FeasibilityOracle.from_instance(ex42, "D")


def test_grid_spec():
    spec = orc.GridSpec(BOX)
    assert spec.diameter == pytest.approx(np.sqrt(32))
    with pytest.raises(InputError):
        orc.GridSpec(BOX, points=5)
    with pytest.raises(InputError):
        orc.GridSpec([[1.0, -1.0]])


def test_grid_project(data):
    disk = data[0]
    spec = orc.GridSpec(BOX)
    p = orc.grid_project(disk, [2.0, 0.0], spec)
    assert np.linalg.norm(p - [1.0, 0.0]) <= co.GRID_TOL
    q = orc.grid_project(disk, [1.0, 1.0], spec)
    ## curved boundary off the grid axes: accuracy is set by the last refinement window
    assert np.linalg.norm(q - np.array([1.0, 1.0]) / np.sqrt(2)) <= co.TOL_CERT_SAMPLED
    assert np.allclose(orc.grid_project(disk, [0.1, 0.2], spec), [0.1, 0.2])
    nowhere = orc.FeasibilityOracle.from_predicate(lambda x: False, 2)
    with pytest.raises(InconclusiveError):
        orc.grid_project(nowhere, [0.0, 0.0], spec)


def test_sampled_polar(data):
    quadrant = data[1]
    xbar = np.zeros(2)
    assert orc.sampled_polar(quadrant, xbar, [1.0, 0.0], BOX)
    assert orc.sampled_polar(quadrant, xbar, [1.0, 2.0], BOX)
    assert not orc.sampled_polar(quadrant, xbar, [-1.0, 0.5], BOX)
    assert orc.sampled_polar(quadrant, xbar, [0.0, 0.0], BOX)
    with pytest.raises(InputError):
        orc.sampled_polar(quadrant, xbar, [1.0, 0.0], BOX, n_samples=100)


def test_sampled_polar_hull(data):
    quadrant = data[1]
    hull, dirs, accepted = orc.sampled_polar_hull(quadrant, np.zeros(2), BOX)
    assert dirs.shape == (co.N_DIRS_2D, 2)
    assert 85 <= int(accepted.sum()) <= 95
    assert geo.cones_equal(hull, geo.ConeFG(np.eye(2), 2), orc.angular_resolution(2))


def test_isolated_anchor():
    point = orc.FeasibilityOracle.from_predicate(lambda x: np.allclose(x, 0.0), 2)
    assert orc.sampled_polar(point, np.zeros(2), [0.3, -1.0], BOX)
    hull, _, accepted = orc.sampled_polar_hull(point, np.zeros(2), BOX)
    assert accepted.all()
    assert geo.cone_contains(hull, [-1.0, -1.0])


def test_too_few_samples():
    pair = orc.FeasibilityOracle.from_predicate(lambda x: np.allclose(x, 0.0) or np.allclose(x, 0.5), 2)
    with pytest.raises(InconclusiveError):
        orc.polar_sample_set(pair, np.zeros(2), BOX, extra=np.full((10, 2), 0.5))


def test_angular_resolution():
    assert orc.angular_resolution(1) == co.TOL_CERT_SAMPLED
    assert orc.angular_resolution(2) == pytest.approx(4 * np.pi / 360 + co.TOL_CERT_SAMPLED)
    assert orc.angular_resolution(2, 720) < orc.angular_resolution(2)


def test_random_instance():
    inst = orc.random_instance(0, 1, 1)
    P = inst.constraints[0].subdiff_at(inst.anchors[0].xbar)
    assert np.allclose(np.sort(P.vertices[:, 0]), [-2.0, 0.0])
    again = orc.random_instance(0, 1, 1)
    assert np.allclose(again.anchors[0].xbar, inst.anchors[0].xbar)
    with pytest.raises(InputError):
        orc.random_instance(0, 4, 1)


@pytest.mark.parametrize("seed", range(6))
def test_random_instance_shapes(seed):
    n, m = 1 + seed % 3, 1 + seed % 4
    inst = orc.random_instance(seed, n, m)
    assert inst.n == n and inst.m == m
    assert inst.feasible_hrep is not None
    xbar = inst.anchors[0].xbar
    assert inst.in_K_tilde(xbar)[0]
    assert all(g.subdiff_at(xbar) is not None for g in inst.constraints)
