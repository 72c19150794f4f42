import json

import pytest

from relinv import cli
from relinv import scenario as sc


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def write(tmp_path, data, name="s.json"):
    p = tmp_path / name
    p.write_text(json.dumps(data) if not isinstance(data, str) else data)
    return str(p)


MINIMAL = {
    "name": "euler",
    "charts": [{"name": "P", "variables": ["x", "y"]}],
    "algebra": {"chart": "P", "fields": [{"x": "x", "y": "y"}]},
    "tasks": [{"kind": "divisor-weight", "divisor": {"expression": "x*y", "expect": ["2"]}}],
}


@pytest.mark.parametrize("name", sc.bundled_names())
def test_bundled_scenarios_validate_and_run(name, capsys):
    data = sc.load(name)
    sc.validate(data)
    code, out, _ = run_cli(capsys, "run", name, "--skip-heavy")
    assert code == 0
    assert json.loads(out)["status"] == "ok"


def test_run_is_deterministic(capsys):
    _, a, _ = run_cli(capsys, "run", "heisenberg")
    _, b, _ = run_cli(capsys, "run", "heisenberg")
    assert a == b


def test_jobs_do_not_change_output(capsys):
    _, a, _ = run_cli(capsys, "run", "x2dx")
    _, b, _ = run_cli(capsys, "run", "x2dx", "--jobs", "2")
    assert a == b


def test_text_format(capsys):
    code, out, _ = run_cli(capsys, "run", "sl2_cp1", "--format", "text")
    assert code == 0
    assert "status: ok" in out
    assert "B = -A" in out


def test_output_file(tmp_path, capsys):
    target = tmp_path / "r.json"
    code, out, _ = run_cli(capsys, "run", "sl2_cp1", "-o", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["scenario"] == "sl2_cp1"


def test_minimal_file_scenario(tmp_path, capsys):
    code, out, _ = run_cli(capsys, "run", write(tmp_path, MINIMAL))
    assert code == 0
    assert json.loads(out)["status"] == "ok"


def test_expectation_mismatch_is_negative(tmp_path, capsys):
    data = json.loads(json.dumps(MINIMAL))
    data["tasks"][0]["divisor"]["expect"] = ["3"]
    code, out, _ = run_cli(capsys, "run", write(tmp_path, data))
    assert code == 1
    assert json.loads(out)["status"] != "ok"


def test_not_invariant_is_negative(tmp_path, capsys):
    data = json.loads(json.dumps(MINIMAL))
    data["tasks"][0]["divisor"] = {"expression": "x + 1"}
    code, _, _ = run_cli(capsys, "run", write(tmp_path, data))
    assert code == 1


def test_glue_failure_is_negative(tmp_path, capsys):
    data = sc.load("aff1_cp1")
    data["tasks"] = [{"kind": "glue", "functions": {"U0": "1", "Uinf": "y + 1"}}]
    code, _, _ = run_cli(capsys, "run", write(tmp_path, data))
    assert code == 1


def test_malformed_expression_reports_position(tmp_path, capsys):
    data = json.loads(json.dumps(MINIMAL))
    data["tasks"][0]["divisor"]["expression"] = "x**y"
    code, _, err = run_cli(capsys, "run", write(tmp_path, data))
    assert code == 2
    assert "position" in err or "^" in err


def test_unknown_variable(tmp_path, capsys):
    data = json.loads(json.dumps(MINIMAL))
    data["tasks"][0]["divisor"]["expression"] = "z"
    code, _, err = run_cli(capsys, "run", write(tmp_path, data))
    assert code == 2
    assert "z" in err


def test_schema_violation(tmp_path, capsys):
    data = json.loads(json.dumps(MINIMAL))
    data["tasks"][0]["kind"] = "bogus"
    code, _, err = run_cli(capsys, "run", write(tmp_path, data))
    assert code == 2
    assert "tasks" in err


def test_bad_json(tmp_path, capsys):
    code, _, err = run_cli(capsys, "run", write(tmp_path, "{\"name\": "))
    assert code == 2
    assert "line" in err


def test_missing_file(capsys):
    code, _, _ = run_cli(capsys, "run", "/nonexistent/thing.json")
    assert code == 2


def test_bad_arguments(capsys):
    assert run_cli(capsys, "run", "x2dx", "--grid", "a,b")[0] == 2
    assert run_cli(capsys, "run", "x2dx", "--jobs", "0")[0] == 2
    assert run_cli(capsys, "frobnicate")[0] == 2


def test_grid_parsing():
    g = cli.parse_grid("1,2,3,6:3")
    assert g.denominators == (1, 2, 3, 6) and g.bound == 3
    assert cli.parse_grid("2").bound == 6


def test_schema_command(capsys):
    code, out, _ = run_cli(capsys, "schema")
    assert code == 0
    assert json.loads(out)["title"] == "relinv scenario"


def test_verify_single_criterion(capsys):
    code, out, _ = run_cli(capsys, "verify", "--criterion", "1")
    assert code == 0
    assert json.loads(out)["status"] == "pass"


def test_verify_detects_corrupted_input(capsys):
    bad = "9*y2^2*y5 - 45*y2*y3*y4 + 41*y3^3"
    code, out, _ = run_cli(capsys, "verify", "--criterion", "7", "--override", f"R5={bad}")
    assert code == 1
    report = json.loads(out)
    assert report["status"] == "fail"
    (check,) = report["checks"]
    assert check["criterion"] == 7 and check["status"] == "fail"
    assert check["failures"][0]["error"].startswith("NotInvariant")


def test_verify_rejects_unknown_override(capsys):
    assert run_cli(capsys, "verify", "--override", "Q=1")[0] == 2
    assert run_cli(capsys, "verify", "--override", "R5")[0] == 2
