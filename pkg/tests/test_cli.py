from __future__ import annotations

import json
import shutil
import subprocess
import sys

import pytest

from vasreach.cli import EXIT_BUDGET, EXIT_NO, EXIT_OK, EXIT_USAGE, main


def call(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_reach_reachable(capsys, fixtures):
    code, out, _ = call(capsys, "reach", fixtures / "fig1.vas", "--from", "0,2", "--to", "1,0")
    assert code == EXIT_OK
    word = out.split("witness:")[1].strip()
    assert len(word) == 7 and sorted(word) == list("aaaabbb")


def test_reach_unreachable_writes_checkable_certificate(capsys, fixtures, tmp_path):
    cert = tmp_path / "c.cert"
    code, out, _ = call(capsys, "reach", fixtures / "fig1.vas", "--from", "0,2", "--to", "0,3",
                        "--templates", "--cert-out", cert)
    assert code == EXIT_NO and "unreachable" in out
    code, out, _ = call(capsys, "check-cert", fixtures / "fig1.vas", "--from", "0,2", "--to", "0,3", "--cert", cert)
    assert code == EXIT_OK and out.strip() == "valid"


def test_reach_budget(capsys, fixtures):
    code, out, _ = call(capsys, "reach", fixtures / "fig1.vas", "--from", "0,2", "--to", "0,3",
                        "--no-templates", "--max-rounds", "1", "--step-budget", "3", "--porcelain")
    assert code == EXIT_BUDGET
    rec = json.loads(out)
    assert rec["verdict"] == "budget-exhausted" and rec["expanded"] == 3


def test_reach_porcelain(capsys, fixtures):
    code, out, _ = call(capsys, "reach", fixtures / "fig1.vas", "--from", "0,2", "--to", "1,0", "--porcelain")
    rec = json.loads(out)
    assert code == 0 and rec["verdict"] == "reachable" and rec["length"] == 7


def test_reach_vass(capsys, fixtures):
    code, out, _ = call(capsys, "reach", fixtures / "hp79.vass", "--from", "p:1,0,0", "--to", "q:0,0,0")
    assert code == EXIT_NO


@pytest.mark.parametrize("cert, target, code, reason", [
    ("x2 <= x1 + 2", "0,3", EXIT_OK, None),
    ("x2 <= x1 + 2", "1,0", EXIT_NO, "target-in-I"),
    ("x1 >= 0", "0,3", EXIT_NO, "target-in-I"),
    ("x1 <= 3", "9,0", EXIT_NO, "not-invariant"),
    ("x1 = 1", "0,3", EXIT_NO, "source-not-in-I"),
])
def test_check_cert(capsys, fixtures, tmp_path, cert, target, code, reason):
    p = tmp_path / "c"
    p.write_text(cert + "\n")
    got, out, _ = call(capsys, "check-cert", fixtures / "fig1.vas", "--from", "0,2", "--to", target,
                       "--cert", p, "--porcelain")
    assert got == code
    rec = json.loads(out)
    assert rec.get("reason") == reason


def test_bundled_certificate(capsys, fixtures):
    code, _, _ = call(capsys, "check-cert", fixtures / "fig1.vas", "--from", "0,2", "--to", "0,3",
                      "--cert", fixtures / "fig1_upper.cert")
    assert code == EXIT_OK


def test_covers(capsys, fixtures):
    code, out, _ = call(capsys, "covers", fixtures / "fig1.vas", "--from", "0,2", "--to", "10,10")
    assert code == EXIT_OK and "covers=true" in out and "aaaaaaaaaa" in out
    code, out, _ = call(capsys, "covers", fixtures / "fig1.vas", "--from", "0,2", "--to", "0,2")
    assert code == EXIT_OK
    code, out, _ = call(capsys, "covers", fixtures / "hp79.vass", "--from", "p:0,0,0", "--to", "p:1,0,0")
    assert code == EXIT_NO and "covers=false" in out


def test_semilinear_commands(capsys, fixtures):
    code, out, _ = call(capsys, "semilinear", "intersect", fixtures / "fig5a.sl", fixtures / "fig5b.sl")
    lines = out.strip().splitlines()
    assert code == 0
    assert set(lines[:-1]) == {"base (8,2) periods {(1,0)}", "base (11,1) periods {(1,0)}",
                               "base (14,0) periods {(1,0)}"}
    assert lines[-1] == "dim=1"
    code, out, _ = call(capsys, "semilinear", "dim", fixtures / "fig6.sl")
    assert out.strip() == "dim=2"
    code, out, _ = call(capsys, "semilinear", "dim", "base (0,0) periods {(1,1)}")
    assert out.strip() == "dim=1"
    code, out, _ = call(capsys, "semilinear", "member", fixtures / "fig4.sl", "--point", "0,2")
    assert code == EXIT_OK
    code, out, _ = call(capsys, "semilinear", "member", fixtures / "fig4.sl", "--point", "1,0")
    assert code == EXIT_NO
    code, _, _ = call(capsys, "semilinear", "intersect", fixtures / "fig4.sl")
    assert code == EXIT_USAGE


def test_mrgs_check(capsys, fixtures):
    code, out, _ = call(capsys, "mrgs-check", fixtures / "fig1_top.mrgs", "--realize", "2")
    assert code == EXIT_OK and "perfect=true" in out and "level check ok" in out
    code, out, _ = call(capsys, "mrgs-check", fixtures / "fig1_trivial.mrgs", "--porcelain")
    rec = json.loads(out)
    assert code == EXIT_NO and rec["perfect"] is False and rec["large_solution"] is False
    assert rec["input_loop"] == [True] and rec["output_loop"] == [True]


def test_usage_errors(capsys, fixtures, tmp_path):
    bad = tmp_path / "bad.vas"
    bad.write_text("vas\ndim 2\naction a 1\n")
    code, _, err = call(capsys, "reach", bad, "--from", "0,2", "--to", "1,0")
    assert code == EXIT_USAGE and "line 3" in err
    assert call(capsys, "reach", fixtures / "fig1.vas", "--from", "0,2")[0] == EXIT_USAGE
    assert call(capsys, "reach", tmp_path / "missing.vas", "--from", "0,2", "--to", "1,0")[0] == EXIT_USAGE
    assert call(capsys, "reach", fixtures / "fig1.vas", "--from", "0,2,1", "--to", "1,0")[0] == EXIT_USAGE
    assert call(capsys, "reach", fixtures / "fig1.vas", "--from", "0,2", "--to", "1,0",
                "--step-budget", "0")[0] == EXIT_USAGE
    garbled = tmp_path / "g.cert"
    garbled.write_text("x1 <")
    assert call(capsys, "check-cert", fixtures / "fig1.vas", "--from", "0,2", "--to", "0,3",
                "--cert", garbled)[0] == EXIT_USAGE
    assert call(capsys, "frobnicate")[0] == EXIT_USAGE
    assert call(capsys)[0] == EXIT_USAGE


def test_fixtures_listing(capsys):
    code, out, _ = call(capsys, "fixtures", "--porcelain")
    rec = json.loads(out)
    assert {"fig1.vas", "hp79.vass", "fig1_top.mrgs"} <= set(rec["files"])


@pytest.mark.skipif(shutil.which("vasreach") is None, reason="console script not installed")
def test_console_script(fixtures):
    res = subprocess.run(["vasreach", "reach", str(fixtures / "fig1.vas"), "--from", "0,2", "--to", "1,0"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and "witness" in res.stdout
    res = subprocess.run([sys.executable, "-m", "vasreach.cli", "reach", str(fixtures / "fig1.vas"),
                          "--from", "0,2", "--to", "0,3"], capture_output=True, text=True)
    assert res.returncode == 1
