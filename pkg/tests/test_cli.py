import json
import subprocess
import sys

import pytest

from gamma1_hecke.admissible import LeviDatum, adm_set
from gamma1_hecke.cli import RunConfig, UsageError, main
from gamma1_hecke.figure import build_picture
from gamma1_hecke.scalar import Scalar
from gamma1_hecke.serialize import parse_json
from gamma1_hecke.testfcn import phi_one_explicit
from gamma1_hecke.weyl import tau


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_run_config():
    with pytest.raises(UsageError):
        RunConfig(0)
    with pytest.raises(UsageError):
        RunConfig(2, p=4)
    with pytest.raises(UsageError):
        RunConfig(2, chi=(0, 1, 1))
    assert RunConfig(3).p == 3


def test_adm_json(capsys):
    code, out, _ = run(capsys, "adm", "--d", "3", "--format", "json")
    assert code == 0
    doc = parse_json(out)
    assert len(doc["records"]) == 7
    assert {r["w"] for r in doc["records"]} == adm_set(3)


def test_adm_csv(capsys):
    code, out, _ = run(capsys, "adm", "--d", "2", "--format", "csv")
    lines = out.strip().splitlines()
    assert code == 0 and lines[0] == "lambda,perm,length,S,codim" and len(lines) == 4


def test_usage_errors(capsys):
    assert run(capsys, "adm", "--d", "0")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "adm", "--d", "9")[0] == 2
    assert run(capsys, "kottwitz", "--d", "5")[0] == 2
    assert run(capsys, "testfn", "--d", "2", "--p", "4")[0] == 2
    assert run(capsys, "lfactor", "--d", "1", "--p", "3", "--chi", "0", "--eta", "0")[0] == 2
    assert run(capsys, "alcove-svg", "--d", "2")[0] == 2


def test_kottwitz(capsys):
    code, out, _ = run(capsys, "kottwitz", "--d", "2")
    doc = parse_json(out)
    vals = {r["w"]: r["k"] for r in doc["records"]}
    assert code == 0 and vals[tau(2)] == 1 - Scalar.q()
    code, out, _ = run(capsys, "kottwitz", "--d", "2", "--q", "3")
    assert {r["w"]: r["k"] for r in parse_json(out)["records"]}[tau(2)] == Scalar.const(-2)


def test_testfn_round_trip(capsys):
    code, out, _ = run(capsys, "testfn", "--d", "2", "--p", "3")
    assert code == 0
    doc = parse_json(out)
    f = phi_one_explicit(3, 1, 2)
    for rec in doc["records"]:
        assert f.value(rec["t"], rec["w"]) == rec["value"]
    assert len(doc["records"]) == len(f.values)


def test_testfn_chi(capsys):
    code, out, _ = run(capsys, "testfn", "--d", "2", "--p", "3", "--chi", "0,1")
    doc = parse_json(out)
    assert code == 0 and doc["meta"]["chi"] == [0, 1] and len(doc["records"]) == 4


def test_strata(capsys):
    code, out, _ = run(capsys, "strata", "--d", "2")
    doc = json.loads(out)
    assert code == 0 and len(doc["strata"]) == 3 and len(doc["covers"]) == 2
    code, out, _ = run(capsys, "strata", "--d", "2", "--dot")
    assert out.startswith("digraph")


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "all", "--d", "3", "--p", "3", "--r", "1")
    assert code == 0
    assert "[FAIL]" not in out and out.count("[PASS]") >= 10


def test_lfactor(capsys):
    code, out, _ = run(capsys, "lfactor", "--d", "1", "--p", "3", "--chi", "0", "--eta", "2", "--precision", "3")
    assert code == 0
    assert "denominator: (1) + (-1/2)*u" in out
    code, out, _ = run(capsys, "lfactor", "--d", "2", "--p", "3", "--chi", "1,1", "--eta", "2,3")
    assert "denominator: (1)\n" in out


def test_alcove_svg(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("GAMMA1_HECKE_OUTDIR", str(tmp_path))
    assert run(capsys, "alcove-svg", "--output", "a.svg")[0] == 0
    assert run(capsys, "alcove-svg", "--output", "b.svg")[0] == 0
    a, b = (tmp_path / "a.svg").read_text(), (tmp_path / "b.svg").read_text()
    assert a == b and "<svg" in a
    assert run(capsys, "alcove-svg", "--nu", "1,1,0")[0] == 2


def test_console_module():
    res = subprocess.run([sys.executable, "-m", "gamma1_hecke", "adm", "--d", "1"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["records"]


@pytest.mark.parametrize("blocks,nu,dark", [
    (((1,), (2, 3)), (0, 1, 0), 3),
    (((1, 2, 3),), (1, 0, 0), 7),
    (((1,), (2,), (3,)), (0, 1, 0), 1),
])
def test_figure_counts(blocks, nu, dark):
    pic = build_picture(LeviDatum(blocks), nu)
    assert len(pic.alcoves) == 7 and pic.count("dark") == dark
