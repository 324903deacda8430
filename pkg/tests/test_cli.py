import json
import subprocess
import sys

import pytest

from lieident.cli import main


def run(capsys, *argv):
    try:
        code = main(list(argv))
    except SystemExit as exc:
        code = exc.code
    out = capsys.readouterr()
    return code, out.out, out.err


def test_classify(capsys):
    code, out, _ = run(capsys, "classify", "--tuple", "-1,1,1,1")
    assert code == 0
    assert "bad" in out and "matched-negatives" in out


def test_check_identity(capsys):
    code, out, _ = run(capsys, "check", "--poly", "[x1:1,x2:1]", "--algebra", "u1")
    assert code == 0 and "identity: true" in out


def test_check_non_identity(capsys):
    code, out, _ = run(capsys, "check", "--poly", "[x1:1,x2:2]", "--algebra", "u1")
    assert code == 1 and "identity: false" in out


def test_check_mod_p(capsys):
    code, _, _ = run(capsys, "check", "--poly", "[x1:1,x2:6]", "--algebra", "u1", "--char", "5")
    assert code == 0


@pytest.mark.parametrize("argv", [
    ("check", "--poly", "[x1:1,x2:1]", "--algebra", "pauli:4"),
    ("check", "--poly", "[x1:1,x2:1]", "--algebra", "sl9"),
    ("classify", "--tuple", "1,2", "--char", "2"),
    ("check", "--poly", "[x1:1,", "--algebra", "u1"),
    ("verify-basis", "--algebra", "u1", "--n-max", "7", "--entry-max", "1"),
    ("frobnicate",),
])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and "error" in err


def test_lambda(capsys):
    code, out, _ = run(capsys, "lambda", "--algebra", "pauli:3", "--degrees", "(1,0),(0,1),(1,2)")
    assert code == 0 and "1" in out
    code, _, _ = run(capsys, "lambda", "--algebra", "pauli:3", "--degrees", "(1,0),(0,1),(1,1),(1,0)")
    assert code == 1


def test_verify_basis_report(capsys, tmp_path):
    path = tmp_path / "r.json"
    code, _, _ = run(capsys, "verify-basis", "--algebra", "u1", "--char", "0", "--n-max", "4",
                     "--entry-max", "2", "--json", str(path))
    assert code == 0
    report = json.loads(path.read_text())
    assert report["schema"] == "lieident-report/1"
    assert report["passed"] is True and report["counterexamples"] == []
    assert all(isinstance(v["dim_kernel"], str) for v in report["verdicts"])
    assert "timing" not in report


def test_reports_are_byte_identical(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for p in (a, b):
        run(capsys, "verify-basis", "--algebra", "w1", "--char", "3", "--n-max", "3", "--entry-max", "3",
            "--entry-min", "-2", "--json", str(p))
    assert a.read_bytes() == b.read_bytes()


def test_timing_is_opt_in(capsys, tmp_path):
    path = tmp_path / "t.json"
    run(capsys, "classify", "--tuple", "1,2", "--timing", "--json", str(path))
    assert "total_seconds" in json.loads(path.read_text())["timing"]


def test_verify_basis_mod_5_reports_gap(capsys, tmp_path):
    path = tmp_path / "r.json"
    code, _, _ = run(capsys, "verify-basis", "--algebra", "u1", "--char", "5", "--n-max", "4",
                     "--entry-max", "2", "--json", str(path))
    assert code == 1
    assert ["-2", "-1", "1", "2"] in json.loads(path.read_text())["counterexamples"]


def test_verify_independence(capsys):
    argv = ("verify-independence", "--char", "5", "--pairs-max", "3", "--triples-max", "3", "--triples-min", "-1")
    code, _, _ = run(capsys, *argv)
    assert code == 1
    code, _, _ = run(capsys, *argv, "--strict")
    assert code == 0


def test_selftest_subset(capsys):
    code, out, _ = run(capsys, "selftest", "--only", "2,11")
    assert code == 0
    assert out.count("[PASS]") == 2


def test_console_script():
    r = subprocess.run([sys.executable, "-m", "lieident.cli", "--version"], capture_output=True, text=True)
    assert r.returncode == 0 and "0.1.0" in r.stdout
