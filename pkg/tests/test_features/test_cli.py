#!/usr/bin/env python
# Created by "Thieu" at 15:40, 08/09/2026 ----------%
#       Email: nguyenthieu2102@gmail.com            %
#       Github: https://github.com/thieu1995        %
# --------------------------------------------------%

import json

import pytest

from tancert import cli
from tancert import corpus
from tancert.utils.report_util import untag, validate_report


def _run_json(capsys, *argv):
    code = cli.main([*argv, "--json"])
    out = capsys.readouterr().out
    return code, out, (json.loads(out) if out.strip() else None)


def test_certify(capsys):
    code, _, report = _run_json(capsys, "certify", "--instance", "ex42", "--x", "0")
    assert code == 0
    row = report["result"][0]
    assert row["certificate"]["lambda"][0]["value"] == pytest.approx(1.0 / 3)
    assert row["certificate"]["lambda"][0]["provenance"] == "exact"
    assert row["perturbation"] and row["stationarity"]
    assert report["exit_code"]["value"] == 0


def test_certify_without_certificate(capsys):
    code, _, report = _run_json(capsys, "certify", "--instance", "ex42", "--x", "2")
    assert code == 1
    assert report["result"][0]["certificate"] == "none"


@pytest.mark.parametrize("argv, expected", [
    (("cq", "--instance", "ex21"), 0),
    (("cq", "--instance", "ex31"), 1),
    (("chip", "--instance", "ex31"), 0),
    (("cones", "--instance", "ex3x"), 1),
    (("cones", "--instance", "ex42"), 0),
    (("project", "--instance", "ex42"), 0),
    (("audit", "--instance", "ex42"), 0),
])
def test_exit_codes(capsys, argv, expected):
    code, _, report = _run_json(capsys, *argv)
    assert code == expected
    assert report["command"] == argv[0]
    assert validate_report(report)


def test_cq_report(capsys):
    _, _, report = _run_json(capsys, "cq", "--instance", "ex21")
    result = untag(report["result"])
    assert result["nrcq"]["holds"] is False
    assert result["nacq"]["holds"] is True
    assert report["result"]["nacq"]["provenance"] == "sampled"


def test_instance_file(capsys, tmp_path):
    path = tmp_path / "copy.json"
    path.write_text(corpus.fixture_path("ex42").read_text(encoding="utf-8"), encoding="utf-8")
    code, _, report = _run_json(capsys, "project", "--instance", str(path), "--x", "5")
    assert code == 0
    assert untag(report["result"])[0]["projection"] == pytest.approx([3.0])


def test_input_errors(capsys, tmp_path):
    broken = tmp_path / "broken.json"
    broken.write_text('{"n": 1,', encoding="utf-8")
    assert cli.main(["inspect", "--instance", str(broken)]) == 2
    bad_expr = tmp_path / "bad_expr.json"
    bad_expr.write_text(json.dumps({
        "n": 1, "constraints": [{"name": "g1", "expr": "x1 +* 2"}],
        "C": {"halfspaces": []}, "anchors": [{"xbar": [0]}],
    }), encoding="utf-8")
    assert cli.main(["inspect", "--instance", str(bad_expr)]) == 2
    assert cli.main(["inspect", "--instance", "no_such_instance.json"]) == 2
    assert cli.main(["inspect"]) == 2
    assert cli.main(["certify", "--instance", "ex42", "--x", "0,1"]) == 2
    assert cli.main(["certify", "--instance", "ex42", "--tol", "-1"]) == 2
    assert cli.main(["cq", "--instance", "ex21", "--dirs", "2"]) == 2
    assert capsys.readouterr().out == ""


def test_unknown_command():
    with pytest.raises(SystemExit):
        cli.main(["optimize", "--instance", "ex42"])


def test_output_is_deterministic(capsys):
    outputs = [_run_json(capsys, "audit", "--instance", "ex41", "--seed", "3")[1] for _ in range(2)]
    assert outputs[0] == outputs[1]


def test_text_output(capsys):
    code = cli.main(["certify", "--instance", "ex42", "--x", "0"])
    out = capsys.readouterr().out
    assert code == 0
    assert out.startswith("certify ex42")
    assert "lambda" in out and "0.333333" in out
    assert out.rstrip().endswith("exit code: 0")


def test_fixture_corpus_command(capsys):
    code, _, report = _run_json(capsys, "paper-examples")
    assert code == 0
    result = untag(report["result"])
    assert result["n_failed"] == 0
    assert all(item["passed"] for item in result["fixtures"].values())


def test_certify_with_unresolvable_inactive_constraint(capsys, tmp_path):
    path = tmp_path / "inactive.json"
    path.write_text(json.dumps({
        "n": 1,
        "constraints": [{"name": "g1", "expr": "-x1", "subdiff": {"0": [[-1]]}},
                        {"name": "g2", "expr": "sqrt(x1) - 5"}],
        "C": {"halfspaces": []},
        "anchors": [{"xbar": [0], "xs": [[-1]]}],
        "box": [[-1, 1]],
    }), encoding="utf-8")
    code, _, report = _run_json(capsys, "certify", "--instance", str(path))
    assert code == 0
    row = untag(report["result"])[0]
    assert row["certificate"]["lambda"] == pytest.approx([1.0, 0.0])
    assert row["perturbation"] and row["stationarity"]
