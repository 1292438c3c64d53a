#!/usr/bin/env python
# Created by "Thieu" at 15:30, 07/09/2026 ----------%
#       Email: nguyenthieu2102@gmail.com            %
#       Github: https://github.com/thieu1995        %
# --------------------------------------------------%

import copy
import json

import numpy as np
import pytest

from tancert import corpus
from tancert.instance import contact_layer, instance_from_dict, load_instance
from tancert.utils import constant as co
from tancert.utils import io_util
from tancert.utils.exception import ExprSyntaxError, InputError, PreconditionError

BASE = {
    "n": 1,
    "constraints": [{"name": "g1", "expr": "abs(x1) - x1", "subdiff": {"0": [[-2], [0]]}}],
    "C": {"halfspaces": [{"a": [1], "b": 0}]},
    "feasible_hrep": {"halfspaces": [{"a": [1], "b": 0}, {"a": [-1], "b": 0}]},
    "anchors": [{"xbar": [0], "xs": [[1], [-1]]}],
    "box": [[-1, 1]],
}


def _doc(**changes):
    doc = copy.deepcopy(BASE)
    doc.update(changes)
    return doc


@pytest.fixture(scope="module")  # scope: Call only 1 time at the beginning
def data():
    return instance_from_dict(_doc(id="kink")), corpus.load_fixture("ex42")


def test_load(data):
    inst, ex42 = data
    assert inst.n == 1 and inst.m == 1
    assert inst.instance_id == "kink"
    assert np.allclose(inst.anchor(0).xbar, [0.0])
    assert len(inst.anchor(0).xs) == 2
    assert ex42.m == 2
    assert ex42.expected["nrcq"] is True
    assert ex42.constraints[0].subdiff_at([1.0]) is not None


def test_membership(data):
    _, ex42 = data
    X = np.array([[0.0], [1.0], [2.0], [3.5]])
    assert ex42.g_values(X).shape == (4, 2)
    assert ex42.g_values([1.0]).shape == (2,)
    assert ex42.in_K(X).tolist() == [False, True, True, False]
    assert ex42.in_C(X).tolist() == [False, True, True, True]
    assert ex42.in_K_tilde(X).tolist() == [False, True, True, False]


def test_anchor_and_box(data):
    inst = data[0]
    with pytest.raises(InputError):
        inst.anchor(3)
    assert inst.bounding_box().shape == (1, 2)
    no_box = instance_from_dict(_doc(box=None))
    with pytest.raises(InputError):
        no_box.bounding_box()


def test_to_dict_reloads(data):
    inst = data[0]
    doc = json.loads(json.dumps(inst.to_dict(), default=lambda a: np.asarray(a).tolist()))
    again = instance_from_dict(doc)
    assert again.n == inst.n
    assert again.in_K_tilde([[0.0], [0.5]]).tolist() == [True, False]


def test_load_from_file(tmp_path):
    path = tmp_path / "kink.json"
    io_util.write_json(_doc(), path)
    inst = load_instance(path)
    assert inst.instance_id == "kink"


def test_malformed_json(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{"n": 1,\n "constraints": [}', encoding="utf-8")
    with pytest.raises(InputError) as err:
        load_instance(path)
    assert "broken.json:2:" in str(err.value)
    with pytest.raises(InputError):
        load_instance(tmp_path / "missing.json")


@pytest.mark.parametrize("changes", [
    {"n": 0},
    {"n": True},
    {"extra": 1},
    {"box": [[1, -1]]},
    {"anchors": [{"xs": []}]},
    {"anchors": [{"xbar": [0, 0]}]},
    {"C": {"halfspaces": [{"a": [1]}]}},
    {"constraints": [{"name": "g1", "expr": "x2"}]},
    {"constraints": [{"name": "g1", "expr": "abs(x1) - x1", "subdiff": {"0": [[-1], [0]]}}]},
    {"feasible_hrep": {"halfspaces": [{"a": [1], "b": 0.5}]}},
])
def test_schema_errors(changes):
    with pytest.raises(InputError):
        instance_from_dict(_doc(**changes))


def test_expression_error():
    with pytest.raises(ExprSyntaxError):
        instance_from_dict(_doc(constraints=[{"name": "g1", "expr": "abs(x1 - "}]))


def test_infeasible_anchor():
    with pytest.raises(PreconditionError):
        instance_from_dict(_doc(anchors=[{"xbar": [-0.5]}]))
    ## validation can be skipped
    inst = instance_from_dict(_doc(anchors=[{"xbar": [-0.5]}]), validate=False)
    assert inst.anchors[0].xbar[0] == -0.5


def test_contact_layer():
    xbar = np.zeros(2)
    assert contact_layer(np.array([0.1, 0.0]), xbar, 0.4) == pytest.approx(co.TOL_FEAS + co.HREP_CONTACT * 0.01)
    assert contact_layer(np.array([1.0, 0.0]), xbar, 0.4) == co.TOL_FEAS
    assert contact_layer(np.array([1.0, 0.0]), xbar) == pytest.approx(co.TOL_FEAS + co.HREP_CONTACT)


def test_shifted_hrep_is_rejected():
    ## ex42 has K̃ = [1, 3]; an hrep of [1, 4] differs on (3, 4], far from the anchor
    doc = io_util.read_json(corpus.fixture_path("ex42"))
    doc["feasible_hrep"]["halfspaces"][1]["b"] = 4
    with pytest.raises(InputError):
        instance_from_dict(doc)
    ## the wedge x1 >= x2 >= 0 matches K of ex41 only near the origin, and (0.5, 0.6) is in K
    doc = io_util.read_json(corpus.fixture_path("ex41"))
    doc["feasible_hrep"] = {"halfspaces": [{"a": [-1, 1], "b": 0}, {"a": [0, -1], "b": 0}]}
    with pytest.raises(InputError):
        instance_from_dict(doc)
