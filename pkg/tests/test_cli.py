import io
import json
import subprocess
import sys

import pytest

from weilkit.cli import main


def run(argv, payload=None, stdin=""):
    if payload is not None:
        argv = list(argv) + ["--json", json.dumps(payload)]
    out, err = io.StringIO(), io.StringIO()
    status = main(argv, stdin=io.StringIO(stdin), stdout=out, stderr=err)
    return status, (json.loads(out.getvalue()) if out.getvalue() else None), err.getvalue()


def test_algebra_build():
    status, out, _ = run(["algebra", "build"], {"generators": 1, "relations": [[2]]})
    assert status == 0
    assert out["dim"] == 2 and out["nilpotency_index"] == 2
    assert out["structure_constants"] == [[["1", "0"], ["0", "1"]], [["0", "1"], ["0", "0"]]]


def test_algebra_build_from_stdin():
    status, out, _ = run(["algebra", "build"], stdin='{"generators": 0, "relations": []}')
    assert status == 0 and out["dim"] == 1 and out["name"] == "k"


def test_build_rejects_infinite_quotient():
    status, out, err = run(["algebra", "build"], {"generators": 2, "relations": [[2, 0]]})
    assert status == 1 and out is None
    assert json.loads(err)["error"]["code"] == "invalid_presentation"


def test_algebra_check_exit_codes():
    ok = {"structure_constants": [[[1, 0], [0, 1]], [[0, 1], [0, 0]]], "unit_index": 0, "augmentation": [1, 0]}
    bad = {"structure_constants": [[[1, 0], [0, 1]], [[0, 1], [0, 1]]], "unit_index": 0, "augmentation": [1, 0]}
    assert run(["algebra", "check"], ok)[0] == 0
    status, out, _ = run(["algebra", "check"], bad)
    assert status == 1 and out["laws"]["augmentation_ideal_nilpotent"] is False


def test_algebra_tensor():
    status, out, _ = run(["algebra", "tensor"], {"factors": ["D", "D"]})
    assert status == 0 and out["dim"] == 4 and out["name"] == "D⊗D"
    assert len(out["inclusions"]) == 2


def test_algebra_hom():
    payload = {"source": "D", "target": {"tensor": ["D", "D"]}, "images": [[0, 0, 0, 1]], "apply": [[2, 7]]}
    status, out, _ = run(["algebra", "hom"], payload)
    assert status == 0 and out["applied"][0]["coeffs"] == ["2", "0", "0", "7"]
    payload = {"source": "D", "target": {"tensor": ["D", "D"]}, "images": [[0, 1, 1, 0]]}
    status, _, err = run(["algebra", "hom"], payload)
    assert status == 1 and json.loads(err)["error"]["code"] == "relation_violation"


def test_lift_exact_and_float():
    status, out, _ = run(["lift"], {"algebra": "D", "expression": "1/(1+x)", "env": {"x": [0, 1]}})
    assert status == 0 and out["values"][0]["coeffs"] == ["1", "-1"]
    status, out, _ = run(["lift", "--mode", "float"], {"algebra": "D", "expression": "exp(x)", "env": {"x": [0, 1]}})
    assert out["values"][0]["coeffs"] == [1.0, 1.0]


def test_lift_errors():
    status, _, err = run(["lift"], {"algebra": "D", "expression": "exp(x)", "env": {"x": [0, 1]}})
    assert status == 1 and json.loads(err)["error"]["code"] == "mode_mismatch"
    status, _, err = run(["lift"], {"algebra": "D", "expression": "1/x", "env": {"x": [0, 1]}})
    assert status == 1 and json.loads(err)["error"]["code"] == "not_invertible"
    status, _, err = run(["lift"], {"algebra": "D", "expression": "x+", "env": {"x": [0, 1]}})
    assert status == 2
    status, _, _ = run(["lift"], {"algebra": "D", "expression": "x + y", "env": {"x": [0, 1]}})
    assert status == 2


def test_unparseable_input():
    assert run(["algebra", "build"], stdin="{not json")[0] == 2
    assert run(["lift"], {"expression": "x"})[0] == 2


def test_laws_cli():
    status, out, _ = run(["laws", "--trials", "5"])
    assert status == 0 and out["status"] == "pass"
    status, out, _ = run(["laws", "--trials", "10", "--mutant", "noncommutative"])
    assert status == 1 and out["status"] == "fail"
    status, _, err = run(["laws"], {"trials": 0})
    assert status == 2 and json.loads(err)["error"]["code"] == "config_error"


def test_figure_cli():
    f = {"ambient_dim": 2, "variables": ["x", "y"], "equations": ["y^2"]}
    status, out, _ = run(["figure", "fiber"], {"figure": f, "base": [0, 0]})
    assert status == 0 and out["dimension"] == 2
    g = {"ambient_dim": 2, "variables": ["x", "y"], "equations": ["y - x"]}
    h = {"ambient_dim": 2, "variables": ["x", "y"], "equations": ["y"]}
    status, out, _ = run(["figure", "intersect"], {"figures": [g, h], "base": [0, 0]})
    assert out["dimension"] == 0
    status, _, err = run(["figure", "fiber"], {"figure": h, "base": [0, 1]})
    assert status == 1 and json.loads(err)["error"]["code"] == "figure_error"


def test_out_file(tmp_path):
    target = tmp_path / "a.json"
    status, _, _ = run(["algebra", "build", "--out", str(target)], {"generators": 1, "relations": [[3]]})
    assert status == 0 and json.loads(target.read_text())["dim"] == 3


def test_byte_identical_runs():
    argv = [sys.executable, "-m", "weilkit", "laws", "--trials", "10", "--mode", "float"]
    a = subprocess.run(argv, capture_output=True, check=False).stdout
    b = subprocess.run(argv, capture_output=True, check=False).stdout
    assert a and a == b


def test_bad_tolerance():
    f = {"ambient_dim": 1, "equations": ["x1"]}
    assert run(["figure", "fiber", "--tolerance", "-1"], {"figure": f, "base": [0]})[0] == 2


@pytest.mark.parametrize("argv", [["algebra"], ["nope"], []])
def test_usage_errors(argv, capsys):
    assert run(argv)[0] == 2
