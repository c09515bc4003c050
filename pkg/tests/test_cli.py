import io
import json
import subprocess
import sys

import pytest

from wachkit.cli import main
from wachkit.families import FamilySpec, build_D


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def js(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    return json.loads(out)


def test_reduce_example(capsys):
    data = js(capsys, "reduce", "--p", "3", "--f", "2", "--weights", "2,1", "--l", "2,1,0,0")
    assert data == {"level": 4, "exps": [35, 75], "beta_raw": -5, "irreducible": True}


def test_reduce_split(capsys):
    data = js(capsys, "reduce", "--p", "3", "--weights", "2,1", "--l", "2,0")
    assert data["level"] == 2 and data["irreducible"] is False


def test_classify_example(capsys):
    data = js(capsys, "classify", "--p", "3", "--f", "2", "--weights", "2,1")
    assert data["count"] == 2
    assert [r["types"] for r in data["rows"]] == ["1,2", "1,4"]


def test_enumerate_f2(capsys):
    data = js(capsys, "enumerate", "--f", "2")
    assert data["count"] == 16 and data["consistent"]
    for row in data["rows"]:
        assert row["trace_scalar"] == (row["class"] in ("C1", "C2"))


def test_char_and_family_commands(capsys):
    data = js(capsys, "char", "--p", "3", "--f", "2", "--weights", "2,1")
    assert data["passed"]
    data = js(capsys, "--prec-p", "6", "--prec-pi", "8", "family-verify", "--p", "3", "--f", "2",
              "--weights", "1,1", "--types", "1,2", "--alpha", "3,0")
    assert data["passed"] and data["N"] == 8
    data = js(capsys, "family-build", "--p", "3", "--f", "2", "--weights", "2,1", "--types", "1,2",
              "--alpha", "3,0")
    assert "D" in json.dumps(data)
    data = js(capsys, "solve-gamma", "--p", "3", "--f", "2", "--weights", "1,1", "--types", "1,2",
              "--alpha", "0,0", "--gamma", "4", "--show-matrix", "--prec-pi", "6")
    assert data["order"] == 6 and len(data["matrix"]) == 2


def test_precision_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("WACHKIT_PREC_PI", "7")
    data = js(capsys, "char", "--p", "3", "--f", "1", "--weights", "1")
    assert data["N"] == 7


def test_wadm_reads_stdin(capsys, monkeypatch):
    D = build_D(FamilySpec(3, (2, 1), (1, 3), (3, 0)))
    monkeypatch.setattr(sys, "stdin", io.StringIO(json.dumps(D.to_json())))
    data = js(capsys, "wadm")
    assert data["admissible"] and data["kind"] == "NonSplitReducible"
    assert "trace_reducible" in data


def test_table_format(capsys):
    code, out, _ = run(capsys, "--format", "table", "classify", "--p", "3", "--weights", "2,1")
    assert code == 0 and "1,2" in out and not out.lstrip().startswith("{")


@pytest.mark.parametrize(
    "argv",
    [
        ["reduce", "--p", "4", "--weights", "2,1", "--l", "2,1,0,0"],
        ["reduce", "--p", "3", "--weights", "2,1", "--l", "2,1,1,0"],
        ["classify", "--p", "3", "--weights", "0,0"],
        ["enumerate", "--f", "0"],
        ["no-such-command"],
    ],
)
def test_usage_errors_exit_1(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 1


def test_excluded_class_is_a_usage_error(capsys):
    code, _, err = run(capsys, "family-build", "--p", "3", "--f", "2", "--weights", "2,1",
                       "--types", "3,3", "--alpha", "0,0")
    assert code == 1
    assert "ClassViolation" in json.loads(err)["message"]


def test_verification_failure_exits_2(capsys, monkeypatch):
    import wachkit.gamma_solver as gs

    real = gs.verify

    def broken(*args):
        rep = real(*args)
        rep.cocycle = 0
        return rep

    monkeypatch.setattr(gs, "verify", broken)
    code, _, _ = run(capsys, "family-verify", "--p", "3", "--f", "2", "--weights", "1,1",
                     "--types", "1,2", "--prec-pi", "6")
    assert code == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "wachkit", "reduce", "--p", "4", "--weights", "1",
                           "--l", "1,0"], capture_output=True, text=True)
    assert proc.returncode == 1
