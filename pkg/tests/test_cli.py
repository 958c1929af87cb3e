from __future__ import annotations

import json
import subprocess
import sys

import pytest

from twoorbit.cli import main, run

DEG16 = "-(1/16)*Z^6*(Z+2)^6*(2*Z+3)^3/(Z^2-2)^8"


def test_two_cycle_known_row():
    code, rep = run(["two-cycle", "M12"])
    assert code == 0 and rep["schema"] == 1 and rep["status"] == "pass"
    (r,) = rep["results"]
    assert r["pairs"] == [[1, 11], [2, 10], [4, 8], [6, 6]]
    assert r["diff"] == {"missing": [], "unexpected": []}
    assert "wall_time" not in rep


def test_timing_flag_adds_wall_time():
    code, rep = run(["two-cycle", "M11", "--timing"])
    assert code == 0 and rep["wall_time"] >= 0


def test_two_cycle_without_pairs():
    code, rep = run(["two-cycle", "M23"])
    assert code == 0 and rep["results"][0]["pairs"] == []


@pytest.mark.parametrize(
    "argv",
    [
        ["two-cycle", "S(0)"],
        ["two-cycle"],
        ["two-cycle", "Q(3)"],
        ["genus0", "PGL(2,5)", "--anchor", "7-7#x"],
        ["genus0", "PGL(2,5)", "--anchor", "3-3", "--type", "2,a"],
        ["monodromy", "1/0"],
        ["monodromy", "Z^"],
        ["monodromy", "5"],
        ["bounds", "--landau", "0"],
        ["bounds", "--pgl", "2"],
        ["bounds"],
    ],
)
def test_input_errors_exit_two(argv):
    code, rep = run(argv)
    assert code == 2 and rep["status"] == "error" and rep["kind"] == "input"


def test_failed_check_exits_one():
    code, rep = run(["bounds", "--landau", "7"])
    assert code == 1 and rep["status"] == "fail"


def test_numerical_failure_exits_three():
    code, rep = run(["monodromy", "--no-escalate", "--", DEG16])
    assert code == 3 and "raise precision" in rep["error"]


def test_missing_anchor_is_skipped():
    code, rep = run(["genus0", "M11deg12", "--anchor", "6-6"])
    assert code == 0 and rep["status"] == "skipped"


def test_genus0_types_and_witness():
    code, rep = run(["genus0", "PGL(2,5)", "--anchor", "3-3"])
    assert code == 0
    assert rep["results"][0]["full_types"] == ["(3,4,4)"]
    code, rep = run(["genus0", "AGL(3,2)", "--anchor", "4-4", "--type", "2,2,3,4"])
    assert code == 0 and sum(r["found"] for r in rep["results"]) >= 1
    for r in rep["results"]:
        for w in r["witnesses"]:
            assert w["generated_order"] == 1344


def test_monodromy_single_function():
    code, rep = run(["monodromy", "Z^5*(Z-2)/(Z^2-5)^3"])
    assert code == 0
    (r,) = rep["results"]
    assert r["type"] == [2, 3, 5] and r["group_order"] == 60 and r["genus"] == 0
    assert r["infinity"]["conjugate"]


def test_bounds_known_exception_passes():
    code, rep = run(["bounds", "--pgl", "2,4"])
    (r,) = rep["results"]
    assert code == 0 and r["exact"] == 6 and not r["satisfied"] and r["extra"]["known_exception"]


def test_all_kl_statuses():
    code, rep = run(["two-cycle", "--all-kl"])
    states = {r["status"] for r in rep["results"]}
    assert states <= {"pass", "skipped"} and code == 0
    assert sum(r["status"] == "pass" for r in rep["results"]) == 63


def test_json_output_is_deterministic(capsys):
    outs = []
    for _ in range(2):
        assert main(["genus0", "PGL(2,7)", "--anchor", "two-cycle", "--json"]) == 0
        outs.append(capsys.readouterr().out)
    assert outs[0] == outs[1]
    assert json.loads(outs[0])["schema"] == 1


def test_human_output(capsys):
    assert main(["bounds", "--landau", "10"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("bounds: pass") and "exact 30" in out


def test_errors_go_to_stderr(capsys):
    assert main(["monodromy", "1/0"]) == 2
    captured = capsys.readouterr()
    assert captured.out == "" and "division by zero" in captured.err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "twoorbit", "bounds", "--affine", "2,3", "--json"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["results"][0]["status"] == "pass"
