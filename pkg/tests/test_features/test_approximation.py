#!/usr/bin/env python
# Created by "Thieu" at 14:05, 08/09/2026 ----------%
#       Email: nguyenthieu2102@gmail.com            %
#       Github: https://github.com/thieu1995        %
# --------------------------------------------------%

import json

import numpy as np
import pytest

from tancert import ApproximationAnalyzer
from tancert import corpus
from tancert.utils import constant as co
from tancert.utils.exception import InputError


@pytest.fixture(scope="module")  # scope: Call only 1 time at the beginning
def data():
    return ApproximationAnalyzer(corpus.load_fixture("ex42"), seed=0)


def test_get_support():
    support = ApproximationAnalyzer.get_support("all")
    assert {"NRCQ", "NACQ", "NC", "SCHIP", "CERT", "PROJ", "AUDIT", "MC"} == set(support)
    assert ApproximationAnalyzer.get_support("CERT")["type"] == "certificate"
    with pytest.raises(InputError):
        ApproximationAnalyzer.get_support("RMSE")


def test_instance_from_path():
    az = ApproximationAnalyzer(str(corpus.fixture_path("ex31")))
    assert az.instance.instance_id == "ex31"
    with pytest.raises(InputError):
        ApproximationAnalyzer().NRCQ()


def test_verdicts(data):
    assert data.NRCQ().holds
    assert data.NACQ().holds
    assert data.NC().holds
    verdict = data.SCHIP()
    assert verdict.holds
    assert verdict.provenance in (co.PROVENANCE_EXACT, co.PROVENANCE_SAMPLED)


def test_verdicts_on_other_instance(data):
    ex31 = corpus.load_fixture("ex31")
    ## checks accept an instance per call without touching the one given at creation
    assert not data.NRCQ(instance=ex31).holds
    assert not data.NACQ(instance=ex31).holds
    assert data.NRCQ().holds


def test_results_by_list_names(data):
    results = data.get_results_by_list_names(["NRCQ", "NACQ", "SCHIP"])
    assert all(results[name].holds for name in ("NRCQ", "NACQ", "SCHIP"))
    results = data.get_results_by_dict({"PROJ": {"x": [5.0]}})
    assert np.allclose(results["PROJ"][0]["projection"], [3.0])
    with pytest.raises(InputError):
        data.get_results_by_list_names(["NRCQ"], [None, None])


def test_projection(data):
    rows = data.PROJ()
    assert len(rows) == 3
    for row in rows:
        assert np.allclose(row["projection"], [1.0])
        assert row["provenance"] == co.PROVENANCE_EXACT


def test_certificate(data):
    row = data.CERT(x=[0.0])[0]
    assert np.allclose(row["certificate"].lam, [1.0 / 3, 0.0], atol=1e-8)
    assert row["perturbation"] and row["stationarity"]
    row = data.CERT(x=[2.0])[0]
    assert row["certificate"] is None
    assert not row["perturbation"]
    with pytest.raises(InputError):
        data.CERT(x=[0.0, 1.0])


def test_no_test_points():
    doc = json.loads(json.dumps(corpus.load_fixture("ex42").to_dict(), default=lambda a: np.asarray(a).tolist()))
    doc["anchors"] = [{"xbar": [1.0]}]
    az = ApproximationAnalyzer(doc)
    with pytest.raises(InputError):
        az.PROJ()
    assert len(az.PROJ(x=[0.0])) == 1


def test_inspect(data):
    result = data.inspect()
    assert {"xbar", "g_values", "names", "active", "subdifferentials", "tangential_convexity"} <= set(result)
    assert result["active"] == [0]
    assert result["subdifferentials"][0]["provenance"] == co.PROVENANCE_EXACT
    assert np.allclose(result["subdifferentials"][0]["vertices"], [[-3.0]])
    assert result["names"] == ["g1", "g2"]


def test_multiplier_cone_cached(data):
    first = data.MC()
    assert data.MC() is first
    assert first["conclusion_holds"]
    assert data.contingent_cone() is data.contingent_cone()


def test_equivalence(data):
    report = data.AUDIT()
    assert report["hypotheses_hold"]
    assert not report["defect"]
    assert len(report["rows"]) == 3
