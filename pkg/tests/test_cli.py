import json
import subprocess
import sys

import pytest

from gradedfmod.cli import main, run


def report(argv):
    code, text, _ = run(argv)
    return code, json.loads(text)


def test_theorem_p2():
    code, rep = report(["theorem", "--p", "2", "--alpha-max", "3"])
    assert code == 0 and rep["status"] == "pass"
    search = rep["checks"][0]
    assert search["candidates"] == search["rejected"] == 16
    assert {c["status"] for c in rep["checks"]} == {"pass"}
    assert len(rep["checks"]) == 4


def test_theorem_p3():
    code, rep = report(["theorem", "--p", "3", "--alpha-max", "2", "--workers", "2"])
    assert code == 0
    assert rep["checks"][0]["candidates"] == 1 + 2 * (1 + 3 + 9)


@pytest.mark.parametrize(
    "argv",
    [
        ["theorem", "--p", "4"],
        ["theorem", "--p", "2", "--alpha-max", "-1"],
        ["roundtrip", "--p", "9"],
        ["roundtrip", "--p", "2", "--trials", "-3"],
        ["zero-fuzz", "--p", "2", "--e", "0"],
        ["walkthrough", "--p", "2", "--alpha", "1", "--t", "x"],
        ["walkthrough", "--p", "2", "--alpha", "1", "--t", "y +"],
        ["walkthrough", "--p", "2", "--alpha", "-1"],
        ["nonsense"],
        ["theorem"],
    ],
)
def test_usage_errors_exit_2(argv, capsys):
    assert main(argv) == 2
    assert capsys.readouterr().out == ""


def test_roundtrip_examples():
    code, rep = report(["roundtrip", "--p", "2", "--degree", "-5", "--precision", "40", "--trials", "200", "--seed", "42"])
    assert code == 0
    names = [c["name"] for c in rep["checks"]]
    assert len(names) == len(set(names)) == 8
    code, rep = report(["roundtrip", "--p", "3", "--degree", "0", "--precision", "40", "--trials", "50"])
    assert code == 0
    assert rep["parameters"]["seed"] == 0


def test_zero_trials_is_vacuous_pass_with_warning(capsys):
    assert main(["zero-fuzz", "--p", "2", "--trials", "0"]) == 0
    captured = capsys.readouterr()
    assert "vacuous" in captured.err
    assert json.loads(captured.out)["warnings"]


def test_zero_fuzz():
    code, rep = report(["zero-fuzz", "--p", "2", "--trials", "500", "--seed", "7"])
    assert code == 0
    assert [c["status"] for c in rep["checks"]] == ["pass"] * 3


def test_walkthrough_command():
    code, rep = report(["walkthrough", "--p", "2", "--alpha", "2", "--t", "y^2 + x*y"])
    assert code == 0
    assert rep["parameters"]["t"] == "x*y + y^2"
    defect = [c for c in rep["checks"] if c["name"] == "defect"][0]
    assert defect["value"] == "(deg -7; 0 through y^64, 1/(x^5*y^2))"


def test_reports_are_byte_stable(tmp_path):
    outs = []
    for i in range(2):
        path = tmp_path / f"r{i}.json"
        assert main(["roundtrip", "--p", "3", "--trials", "20", "--seed", "5", "--no-timing", "--out", str(path)]) == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]
    assert json.loads(outs[0])["parameters"]["trials"] == 20


def test_text_output(capsys):
    assert main(["theorem", "--p", "2", "--alpha-max", "1", "--text"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("theorem: PASS")
    assert "[PASS]" in out


def test_failure_exit_code(monkeypatch, capsys):
    from gradedfmod import cli
    from gradedfmod.checks import CheckResult

    def broken(*args, **kwargs):
        return CheckResult("psi o phi = id", 1, failures=1, witness="h = ...")

    monkeypatch.setattr(cli.checks, "psi_phi_roundtrip", broken)
    assert main(["roundtrip", "--p", "2", "--trials", "2"]) == 1
    rep = json.loads(capsys.readouterr().out)
    assert rep["status"] == "fail"
    assert rep["checks"][0]["witness"] == "h = ..."


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "gradedfmod", "theorem", "--p", "2", "--alpha-max", "1", "--no-timing"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["status"] == "pass"
