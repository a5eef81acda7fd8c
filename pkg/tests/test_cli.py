import json
import subprocess
import sys
from pathlib import Path

import pytest

from mwl.cli import run

SCENARIOS = Path(__file__).resolve().parent.parent / "scenarios"


def invoke(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr().out
    return code, out


def json_part(out: str) -> dict:
    # the JSON document comes first in "both" mode; find its end brace
    depth = 0
    for i, ch in enumerate(out):
        if ch == "{":
            depth += 1
        elif ch == "}":
            depth -= 1
            if depth == 0:
                return json.loads(out[: i + 1])
    raise AssertionError("no JSON document in output")


def test_mean_z2_shift(capsys):
    code, out = invoke(capsys, "mean", "--scenario", str(SCENARIOS / "z2-shift.json"))
    assert code == 0
    report = json_part(out)
    rows = report["result"]["rows"]
    assert [r["count_or_value"]["count"] for r in rows] == [2 ** n for n in range(1, 13)]
    assert report["result"]["flags"]["constant_exact"]
    assert "log 4096" in out  # the aligned table rendering


def test_wl_axioms_gen_product_exit_2(capsys):
    code, out = invoke(capsys, "wl-axioms", "--scenario",
                       str(SCENARIOS / "gen-product.json"))
    assert code == 2
    report = json_part(out)
    check = report["result"]["checks"][0]
    assert check["axiom"] == "product" and not check["passed"]
    assert check["counterexample"]["g1"] == "C2"


def test_wl_axioms_log_card_pass(capsys, tmp_path):
    scenario = tmp_path / "log-axioms.json"
    scenario.write_text(json.dumps(
        {"weak_length": {"kind": "log_card"}, "axioms": "all", "budget": 40}))
    code, out = invoke(capsys, "wl-axioms", "--scenario", str(scenario))
    assert code == 0
    report = json_part(out)
    assert all(c["passed"] for c in report["result"]["checks"])
    assert len(report["result"]["checks"]) == 8


def test_biv_eval_strictness(capsys):
    code, out = invoke(capsys, "biv-eval", "--scenario",
                       str(SCENARIOS / "cover-strictness.json"))
    assert code == 0
    report = json_part(out)
    assert report["result"]["value"] == {"kind": "log", "count": 2}


def test_biv_check(capsys, tmp_path):
    scenario = tmp_path / "biv.json"
    scenario.write_text(json.dumps({"bivariant": {"kind": "cover_log"}, "budget": 20}))
    code, out = invoke(capsys, "biv-check", "--scenario", str(scenario))
    assert code == 0


def test_addition_report_cli(capsys):
    code, out = invoke(capsys, "addition", "--scenario",
                       str(SCENARIOS / "addition-z4.json"))
    assert code == 0
    report = json_part(out)
    assert report["result"]["verdict"] == "EXACT-EQUAL"


def test_addition_principal_cli(capsys):
    code, out = invoke(capsys, "addition", "--scenario",
                       str(SCENARIOS / "addition-principal.json"))
    assert code == 0
    report = json_part(out)
    assert report["result"]["verdict"] == "EXACT-EQUAL"
    quotient = report["result"]["quotient"]
    assert quotient["limit"]["certificate"] == "finite-module"
    assert max(r["count_or_value"]["count"] for r in quotient["rows"]) == 8


def test_example_and_list(capsys):
    code, out = invoke(capsys, "list-examples")
    assert code == 0
    names = json_part(out)["result"]["examples"]
    assert "z2-vs-z3" in names

    code2, out2 = invoke(capsys, "example", "z2-vs-z3")
    assert code2 == 0
    assert json_part(out2)["result"]["passed"]

    code3, out3 = invoke(capsys, "example", "list")
    assert code3 == 0
    assert json_part(out3)["result"]["examples"] == names


def test_unknown_example_exits_1(capsys):
    code = run(["example", "definitely-not-known"])
    err = capsys.readouterr().err
    assert code == 1
    assert "unknown example" in err


def test_malformed_json_exits_1(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"weak_length": {')
    code = run(["wl-axioms", "--scenario", str(bad)])
    err = capsys.readouterr().err
    assert code == 1
    assert "line" in err and "column" in err


def test_wl_eval(capsys, tmp_path):
    scenario = tmp_path / "eval.json"
    scenario.write_text(json.dumps({
        "group": {"free_rank": 0, "torsion": [2, 6]},
        "weak_length": {"kind": "gen"},
        "set": [[1, 0], [0, 1], [1, 1]],
    }))
    code, out = invoke(capsys, "wl-eval", "--scenario", str(scenario))
    assert code == 0
    value = json_part(out)["result"]["value"]
    assert value == {"kind": "rational", "num": 2, "den": 1}


def test_report_determinism_and_out_file(capsys, tmp_path):
    args = ["mean", "--scenario", str(SCENARIOS / "z2-shift.json"),
            "--out", str(tmp_path / "r.json")]
    code1, out1 = invoke(capsys, *args)
    first_file = (tmp_path / "r.json").read_bytes()
    code2, out2 = invoke(capsys, *args)
    second_file = (tmp_path / "r.json").read_bytes()
    assert (code1, out1) == (code2, out2)
    assert first_file == second_file
    # report round-trips as JSON and carries the command echo
    report = json.loads(first_file)
    assert report["command"] == "mean" and report["exit_code"] == 0


def test_json_only_format(capsys):
    code, out = invoke(capsys, "list-examples", "--format", "json")
    assert code == 0
    json.loads(out)  # the whole stdout is one JSON document


def test_determinism_across_processes():
    # fresh interpreters with different hash seeds must agree byte for byte
    argv = [sys.executable, "-m", "mwl.cli", "biv-check", "--budget", "15",
            "--format", "json"]
    outs = []
    for seed in ("0", "12345"):
        proc = subprocess.run(argv, capture_output=True, text=True,
                              env={"PYTHONHASHSEED": seed, "PATH": "/usr/bin:/bin"})
        assert proc.returncode == 0, proc.stderr
        outs.append(proc.stdout)
    assert outs[0] == outs[1]


def test_mwl_threads_validation(capsys, monkeypatch):
    monkeypatch.setenv("MWL_THREADS", "zero")
    code = run(["list-examples"])
    assert code == 1
    capsys.readouterr()
    monkeypatch.setenv("MWL_THREADS", "2")
    assert run(["list-examples"]) == 0
