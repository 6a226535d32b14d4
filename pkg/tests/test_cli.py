import csv
import io
import json
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from semitsp.cli import main
from semitsp.graphio import read_graph

FIX = Path(__file__).parent / "fixtures"
G3, G4, ONES5 = str(FIX / "g3.txt"), str(FIX / "g4.txt"), str(FIX / "ones5.json")


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_solve_pch_g4():
    code, out = run("solve", "--algo", "pch", G4)
    assert code == 0
    data = json.loads(out)
    assert data["weight"] == 4.0 and data["order"] == [0, 1, 2, 3]
    assert data["algo"] == "pch" and data["bound_factor"] == 7.5
    assert data["time_ms"] >= 0


def test_solve_all():
    code, out = run("solve", "--algo", "all", G4)
    rows = json.loads(out)
    assert code == 0 and [r["algo"] for r in rows] == ["dmst", "ab", "rab", "pmch", "pch"]
    assert all(r["weight"] == 4.0 for r in rows)


def test_solve_root():
    code, out = run("solve", "--algo", "dmst", "--root", "2", G4)
    assert code == 0 and json.loads(out)["weight"] in (4.0, 22.0)
    code, _ = run("solve", "--algo", "dmst", "--root", "9", G4)
    assert code == 2


@pytest.mark.parametrize("fmt", ["json", "csv", "table"])
def test_compare_golden(fmt):
    code, out = run("compare", "--format", fmt, G4)
    assert code == 0
    assert out == (FIX / f"compare_g4.{fmt}").read_bytes().decode()


def test_compare_weights():
    _, out = run("compare", G3)
    rows = json.loads(out)
    assert len(rows) == 6 and all(r["weight"] == 6.0 for r in rows)
    _, out = run("compare", ONES5)
    assert all(r["weight"] == 5.0 for r in json.loads(out))


def test_compare_without_exact(tmp_path, capsys):
    p = tmp_path / "k22.txt"
    assert run("generate", "--n", "22", "--out", str(p))[0] == 0
    code, out = run("compare", str(p))
    rows = json.loads(out)
    assert code == 0 and len(rows) == 5
    assert "exact row omitted" in capsys.readouterr().err


def test_analyze_golden():
    code, out = run("analyze", G3)
    assert code == 0 and out == (FIX / "analyze_g3.json").read_text()


def test_exact():
    code, out = run("exact", "--method", "brute", G4)
    assert code == 0 and out == (FIX / "exact_g4.json").read_text()
    code, out = run("exact", G4)
    assert json.loads(out) == {"order": [0, 1, 2, 3], "weight": 4.0, "method": "HeldKarp"}


def test_exact_too_large(tmp_path, capsys):
    p = tmp_path / "k13.txt"
    run("generate", "--n", "13", "--seed", "3", "--out", str(p))
    code, out = run("exact", "--method", "brute", str(p))
    assert code == 2 and out == ""
    assert "InstanceTooLarge" in capsys.readouterr().err
    assert run("exact", "--method", "heldkarp", str(p))[0] == 0
    assert run("exact", "--method", "heldkarp", "--cap", "12", str(p))[0] == 2


def test_generate(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.txt"
    assert run("generate", "--n", "6", "--seed", "4", "--out", str(a))[0] == 0
    assert run("generate", "--n", "6", "--seed", "4", "--out", str(b))[0] == 0
    assert read_graph(a) == read_graph(b)
    code, out = run("generate", "--n", "6", "--seed", "4")
    assert code == 0 and json.loads(out)["n"] == 6
    code, out = run("generate", "--n", "6", "--model", "euclidean", "--format", "table")
    assert code == 0 and out.splitlines()[0] == "6"
    assert run("generate", "--n", "2")[0] == 2
    assert run("generate", "--n", "5", "--model", "gamma", "--target-gamma", "0.5")[0] == 2


def test_bench_quality_csv_deterministic():
    a = run("bench", "--quality", "--n", "8", "--instances", "3", "--seed", "7", "--format", "csv")
    b = run("bench", "--quality", "--n", "8", "--instances", "3", "--seed", "7", "--format", "csv")
    assert a == b and a[0] == 0
    rows = list(csv.reader(io.StringIO(a[1])))
    assert len(rows) == 1 + 18
    code, out = run("bench", "--quality", "--n", "6", "--instances", "2")
    assert code == 0 and len(json.loads(out)) == 12


def test_bench_env_seed(monkeypatch):
    base = run("bench", "--quality", "--n", "6", "--instances", "2", "--seed", "9", "--format", "csv")
    monkeypatch.setenv("SEMITSP_SEED", "9")
    env = run("bench", "--quality", "--n", "6", "--instances", "2", "--seed", "1", "--format", "csv")
    assert base == env


def test_bench_out_dir_and_config(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"n": 6, "instances": 2, "models": ["uniform", "euclidean"],
                               "out_dir": str(tmp_path / "q")}))
    assert run("bench", "--quality", "--config", str(cfg))[0] == 0
    assert (tmp_path / "q" / "records.csv").exists()
    code, _ = run("bench", "--timing", "--n-min", "5", "--n", "7", "--instances", "1",
                  "--out-dir", str(tmp_path / "t"))
    assert code == 0 and len(list((tmp_path / "t").glob("series_*.csv"))) == 5
    code, out = run("bench", "--timing", "--n-min", "5", "--n", "6", "--instances", "1")
    assert code == 0 and out.splitlines()[0] == "n,DMST,AB,RAB,PMCH,PCH"


@pytest.mark.parametrize("content", ['{"bogus": 1}', "[1, 2]", "not json", '{"models": ["x"]}'])
def test_bench_bad_config(tmp_path, content):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(content)
    assert run("bench", "--quality", "--config", str(cfg))[0] == 2


@pytest.mark.parametrize("argv", [
    [], ["frobnicate"], ["solve"], ["solve", "--algo", "xyz", G4],
    ["bench", "--quality", "--timing"], ["bench"], ["generate"],
    ["generate", "--n", "abc"], ["analyze", G3, "--format", "yaml"],
    ["exact", "--method", "magic", G4],
])
def test_usage_errors(argv, capsys):
    assert run(*argv)[0] == 1
    assert "usage" in capsys.readouterr().err


def test_help_exits_zero():
    assert run("--help")[0] == 0


@pytest.mark.parametrize("text", [
    "", "3\n0 1\n", "3\n0 1 1\n2 0 1\n1 1 0\n", "3\n1 1 1\n1 0 1\n1 1 0\n",
    "3\n0 0 1\n0 0 1\n1 1 0\n", "2\n0 1\n1 0\n", "x y z", "3\n0 1 nan\n1 0 1\nnan 1 0\n",
])
def test_malformed_inputs_exit_2(tmp_path, text, capsys):
    p = tmp_path / "bad.txt"
    p.write_text(text)
    for cmd in ("analyze", "solve", "exact", "compare"):
        assert run(cmd, str(p))[0] == 2
    assert "error" in capsys.readouterr().err


def test_missing_file():
    assert run("analyze", "/nonexistent/graph.txt")[0] == 2


@settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.function_scoped_fixture])
@given(st.binary(max_size=200))
def test_fuzz_never_crashes(tmp_path, blob):
    for ext in (".txt", ".json"):
        p = tmp_path / f"fuzz{ext}"
        p.write_bytes(blob)
        code, out = run("analyze", str(p))
        assert code in (0, 2)
        if code == 0:
            json.loads(out)


@settings(max_examples=25, deadline=None, suppress_health_check=[HealthCheck.function_scoped_fixture])
@given(st.integers(3, 9), st.integers(0, 2**32 - 1))
def test_outputs_parse(tmp_path, n, seed):
    p = tmp_path / "g.json"
    assert run("generate", "--n", str(n), "--seed", str(seed), "--out", str(p))[0] == 0
    for cmd in (["analyze"], ["solve", "--algo", "all"], ["exact"], ["compare"]):
        code, out = run(*cmd, str(p))
        assert code == 0
        json.loads(out)
        code, out = run(*cmd, "--format", "csv", str(p))
        rows = list(csv.reader(io.StringIO(out)))
        assert code == 0 and len({len(r) for r in rows}) == 1


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "semitsp", "solve", "--algo", "pch", G4],
                         capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["weight"] == 4.0
    res = subprocess.run([sys.executable, "-m", "semitsp", "solve", "--algo"],
                         capture_output=True, text=True)
    assert res.returncode == 1 and res.stdout == ""
