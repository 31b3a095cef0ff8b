"""Instance parsing, report contents and exit codes of the command-line tool."""
import json

import pytest

from branchkit.cli import main
from branchkit.errors import ParseError
from branchkit.instance import parse_instance

from conftest import FIXTURES


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv, "--json")
    return code, json.loads(out)


def test_validate_worked_instance(capsys):
    code, rep = run_json(capsys, "validate", FIXTURES / "sl2_sigma_theta.json")
    assert code == 0
    assert rep["schema"] == "branchkit.report/1"
    assert rep["dim"] == 3 and rep["valid"]
    assert rep["instance"]["conventions"]["sign_convention"]


def test_validate_rejects_non_involutive_sigma(capsys):
    code, rep = run_json(capsys, "validate", FIXTURES / "bad_sigma_matrix.json")
    assert code == 1
    assert rep["error"]["type"] == "NotInvolutive"
    assert rep["error"]["field_path"] == "sigma.rows"


def test_validate_rejects_grading_outside_fixed_cartan(capsys):
    code, rep = run_json(capsys, "validate", FIXTURES / "x_not_theta_fixed.json")
    assert code == 1
    assert rep["error"]["type"] == "NotThetaFixed"


def test_check_open_and_decomposable(capsys):
    code, rep = run_json(capsys, "check", FIXTURES / "swap_ladder.json")
    assert code == 0
    assert rep["sigma_open"] is True and rep["decomposable"] is True
    code, rep = run_json(capsys, "check", FIXTURES / "sl2_sigma_theta.json")
    assert rep["decomposable"] is True


def test_check_negative_control(capsys):
    code, rep = run_json(capsys, "check", FIXTURES / "swap_negative.json")
    assert code == 0
    assert rep["decomposable"] is False
    assert rep["witness"] == ["0", "0", "1", "1", "1", "1"]
    assert rep["criterion_parabolic"]["verdict"] is False


def test_branch_ladder(capsys):
    code, rep = run_json(capsys, "branch", FIXTURES / "swap_ladder.json")
    assert code == 0
    rows = rep["table"]["rows"]
    assert [(r["lambda_prime"], r["p"], r["multiplicity"]) for r in rows] == \
        [([str(7 + 2 * p)], p, 1) for p in range(5)]
    assert rep["table"]["schema"] == "branchkit.multiplicity_table/1"


def test_branch_k_type_ladder(capsys):
    code, rep = run_json(capsys, "branch", FIXTURES / "sl2_sigma_theta.json", "--max-p", 2)
    assert code == 0
    assert [r["lambda_prime"] for r in rep["table"]["rows"]] == [["5"], ["7"], ["9"]]


def test_branch_refusals(capsys):
    code, rep = run_json(capsys, "branch", FIXTURES / "swap_negative.json")
    assert code == 2
    assert rep["error"]["flags"]["decomposable"] is False
    code, rep = run_json(capsys, "branch", FIXTURES / "not_sigma_open.json")
    assert code == 2
    assert rep["error"]["flags"]["sigma_open"] is False


def test_branch_requires_lambda(tmp_path, capsys):
    data = json.loads((FIXTURES / "swap_ladder.json").read_text())
    del data["lambda"]
    path = tmp_path / "no_lambda.json"
    path.write_text(json.dumps(data))
    code, rep = run_json(capsys, "branch", path)
    assert code == 1
    assert rep["error"]["field_path"] == "lambda"


def test_construct_and_assvar(capsys):
    code, rep = run_json(capsys, "construct", FIXTURES / "swap_ladder.json")
    assert code == 0
    assert rep["qprime"]["dim"] == 2 and rep["certified"]
    assert rep["levi_split"]["borel_choice"]["positive_system"]
    code, rep = run_json(capsys, "assvar", FIXTURES / "swap_ladder.json")
    assert code == 0
    assert rep["assvar"]["projection_equal"] and rep["assvar"]["dimensions_equal"]


def test_blattner_command(capsys):
    code, rep = run_json(capsys, "blattner", FIXTURES / "sl2_sigma_theta.json", "--max-p", 1)
    assert code == 0
    assert rep["rows"] == [{"bound": 1, "mu": ["5"], "p": 0}, {"bound": 1, "mu": ["7"], "p": 1}]


@pytest.mark.parametrize("name", ["swap_ladder", "sl2_sigma_theta", "degenerate"])
def test_oracle_on_worked_instances(capsys, name):
    code, rep = run_json(capsys, "oracle", FIXTURES / f"{name}.json")
    assert code == 0
    assert rep["failed"] == []
    assert rep["passed"] == len(rep["checks"])


def test_reports_are_deterministic(capsys):
    for cmd in ("check", "construct", "branch", "assvar"):
        _, first = run(capsys, cmd, FIXTURES / "swap_ladder.json", "--json")
        _, second = run(capsys, cmd, FIXTURES / "swap_ladder.json", "--json")
        assert first == second


def test_text_output(capsys):
    code, out = run(capsys, "branch", FIXTURES / "swap_ladder.json", "--text")
    assert code == 0
    assert "upper bound" in out and "elapsed" in out


def test_budget_dim(capsys):
    code, rep = run_json(capsys, "validate", FIXTURES / "swap_ladder.json", "--budget-dim", 4)
    assert code == 1
    assert rep["error"]["type"] == "DimensionBound"


def test_parse_errors_carry_field_paths():
    with pytest.raises(ParseError) as info:
        parse_instance({"algebra": [["A", 1]], "theta": {"mode": "identity"}, "sigma": "theta",
                        "grading": ["x"]})
    assert info.value.path == "grading[0]"
    with pytest.raises(ParseError) as info:
        parse_instance({"algebra": [["A", 1]], "theta": {"mode": "bogus"}, "sigma": "theta",
                        "grading": [0]})
    assert info.value.path == "theta.mode"
    with pytest.raises(ParseError) as info:
        parse_instance({"algebra": [["A", 1]], "colour": 1})
    assert info.value.path == "colour"


def test_missing_and_unreadable_files(tmp_path, capsys):
    code, _ = run(capsys, "validate", tmp_path / "missing.json")
    assert code == 1
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, rep = run_json(capsys, "validate", bad)
    assert code == 1 and rep["error"]["type"] == "ParseError"
