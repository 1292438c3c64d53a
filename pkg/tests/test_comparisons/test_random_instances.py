#!/usr/bin/env python
# Created by "Thieu" at 18:10, 08/09/2026 ----------%
#       Email: nguyenthieu2102@gmail.com            %
#       Github: https://github.com/thieu1995        %
# --------------------------------------------------%

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from tancert import bestapprox as ba
from tancert import cones as cn
from tancert import geometry as geo
from tancert.oracles import FeasibilityOracle, GridSpec, grid_project, random_instance
from tancert.utils import constant as co

shapes = st.tuples(st.integers(0, 10_000), st.integers(1, 3), st.integers(1, 4))


def _shape(seed):
    return seed, 1 + seed % 3, 1 + (seed // 3) % 4


def _grid_projects_to_anchor(inst, x, xbar):
    oracle = FeasibilityOracle.from_instance(inst, "K_tilde")
    p = grid_project(oracle, x, GridSpec.from_instance(inst))
    return np.linalg.norm(p - xbar) <= co.TOL_CERT_SAMPLED


def _projects_to_anchor(inst, x, xbar):
    ## K̃ of a random instance is the polyhedron feasible_hrep
    return np.linalg.norm(ba.project_feasible(inst, x) - xbar) <= 1e-7 * max(1.0, np.linalg.norm(x))


@pytest.mark.parametrize("seed", range(100))
def test_certificate_soundness(seed):
    ## a certificate at x means P(x) = xbar, checked on the grid search, never on the hrep
    inst = random_instance(*_shape(seed))
    xbar = inst.anchors[0].xbar
    for x in inst.anchors[0].xs:
        cert = ba.find_certificate(inst, x, xbar)
        if cert is None:
            continue
        assert _grid_projects_to_anchor(inst, x, xbar)
        assert ba.check_certificate_perturbation(inst, cert, x, xbar)
        unit = ba.unit_certificate(inst, x, xbar)
        assert ba.check_certificate_stationarity(inst, unit, x, xbar)


@settings(max_examples=100, deadline=None)
@given(shapes)
def test_certificate_completeness(shape):
    inst = random_instance(*shape)
    xbar = inst.anchors[0].xbar
    ## the first two test points lie in the normal cone at xbar
    for x in inst.anchors[0].xs[:2]:
        assert _projects_to_anchor(inst, x, xbar)
        assert ba.find_certificate(inst, x, xbar) is not None
    for x in inst.anchors[0].xs[2:]:
        if _projects_to_anchor(inst, x, xbar):
            assert ba.find_certificate(inst, x, xbar) is not None


@pytest.mark.parametrize("seed", range(100))
def test_sampled_properties(seed):
    inst = random_instance(*_shape(seed))
    xbar = inst.anchors[0].xbar
    audit = cn.audit_multiplier_cone(inst, xbar, seed=seed)
    assert not audit["defect"]
    ## K is a polyhedron here, so near convexity is never falsified and T ⊆ D follows
    assert audit["near_convex"].holds
    assert audit["T_subset_D"]
    _, polys, _ = cn.active_subdiffs(inst, xbar)
    if geo.normal_cone(inst.C, xbar, co.TOL_FEAS).is_zero() and cn.check_nrcq(polys, inst.n).holds:
        assert audit["nacq"].holds
    if audit["hypotheses_hold"]:
        assert audit["conclusion_holds"]
        assert ba.check_strong_chip(inst, xbar, seed=seed, audit=audit).holds
