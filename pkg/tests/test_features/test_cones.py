#!/usr/bin/env python
# Created by "Thieu" at 09:35, 08/09/2026 ----------%
#       Email: nguyenthieu2102@gmail.com            %
#       Github: https://github.com/thieu1995        %
# --------------------------------------------------%

import numpy as np
import pytest

from tancert import cones as cn
from tancert import corpus
from tancert import geometry as geo
from tancert import tanconvex as tc
from tancert.oracles import FeasibilityOracle
from tancert.utils import constant as co
from tancert.utils.exception import InputError, PreconditionError


@pytest.fixture(scope="module")  # scope: Call only 1 time at the beginning
def data():
    return {name: corpus.load_fixture(name) for name in ("ex31", "ex3x", "ex42")}


def test_build_cones():
    polys = [tc.PolytopeV([[-2.0], [0.0]])]
    D = cn.build_D(polys)
    M = cn.build_M(polys)
    assert geo.cones_equal(D, geo.ConeFG([[1.0]], 1))
    assert geo.cones_equal(M, geo.ConeFG([[-1.0]], 1))
    assert cn.build_D([], 2).is_whole_space()
    assert cn.build_M([], 2).is_zero()
    with pytest.raises(InputError):
        cn.build_D([])


def test_active_subdiffs(data):
    active, polys, prov = cn.active_subdiffs(data["ex42"], [1.0])
    assert active == (0,)
    assert prov == co.PROVENANCE_EXACT
    assert np.allclose(polys[0].vertices, [[-3.0]])
    with pytest.raises(PreconditionError):
        cn.active_subdiffs(data["ex42"], [0.0])


def test_check_nrcq():
    verdict = cn.check_nrcq([tc.PolytopeV([[-3.0]])])
    assert verdict.holds
    assert verdict.witness[0] > 0
    assert not cn.check_nrcq([tc.PolytopeV([[-2.0], [0.0]])]).holds
    ## opposite gradients leave no strictly feasible direction
    assert not cn.check_nrcq([tc.PolytopeV([[1.0, 0.0]]), tc.PolytopeV([[-1.0, 0.0]])]).holds
    assert cn.check_nrcq([], 2).holds


def test_contingent_cone_sample():
    halfplane = FeasibilityOracle.from_predicate(lambda x: x[0] <= 0, 2)
    report = cn.contingent_cone_sample(halfplane, [0.0, 0.0])
    assert 179 <= int(report.accepted.sum()) <= 183
    assert np.all(report.accepted_directions[:, 0] <= 1e-9)
    assert np.isnan(report.failed_alpha[report.accepted]).all()
    assert geo.cone_contains(report.hull, [-1.0, 0.3])
    assert "note" in report.to_dict()["metadata"]
    with pytest.raises(PreconditionError):
        cn.contingent_cone_sample(halfplane, [1.0, 0.0])


def test_nearly_convex_probe():
    union = FeasibilityOracle.from_predicate(lambda x: x[0] <= 0 or x[0] >= 1, 1)
    verdict = cn.nearly_convex_probe(union, [0.0], [[-1.0], [2.0]])
    assert not verdict.holds
    assert np.allclose(verdict.witness, [2.0])
    assert cn.nearly_convex_probe(union, [0.0], [[-1.0], [-0.5], [0.0]]).holds
    with pytest.raises(PreconditionError):
        cn.nearly_convex_probe(union, [0.0], [[0.5]])


def test_default_samples(data):
    ex42 = data["ex42"]
    oracle = FeasibilityOracle.from_instance(ex42, "K")
    Y = cn.default_samples(ex42, oracle, [1.0], seed=1)
    assert np.allclose(Y[0], [1.0])
    assert Y.shape[0] <= 1 + 4 + 2 + co.N_RANDOM_SAMPLES
    assert oracle.contains(Y).all()


def test_check_nacq(data):
    for name, expected in (("ex31", False), ("ex3x", True), ("ex42", True)):
        inst = data[name]
        xbar = inst.anchors[0].xbar
        _, polys, _ = cn.active_subdiffs(inst, xbar)
        report = cn.contingent_cone_sample(FeasibilityOracle.from_instance(inst, "K_tilde"), xbar)
        verdict = cn.check_nacq(cn.build_D(polys, inst.n), report)
        assert verdict.holds is expected
        if not expected:
            assert np.allclose(verdict.witness, [1.0])
    with pytest.raises(InputError):
        cn.check_nacq(geo.ConeH(np.eye(2), 2), report)


def test_audit_multiplier_cone(data):
    audit = cn.audit_multiplier_cone(data["ex42"], [1.0])
    assert audit["near_convex"].holds and audit["nacq"].holds
    assert audit["T_subset_D"]
    assert audit["hypotheses_hold"] and audit["conclusion_holds"]
    assert not audit["defect"]

    audit = cn.audit_multiplier_cone(data["ex3x"], [2.0])
    assert not audit["near_convex"].holds
    assert not audit["hypotheses_hold"]
    assert not audit["conclusion_holds"]
    assert not audit["M_in_polar_K"]
    assert not audit["defect"]
