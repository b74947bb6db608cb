"""Command-line front end: documented examples, exit codes and determinism."""

import json
import os
import subprocess
import sys

import pytest

from qcc.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_rank2_vars_period(capsys):
    code, out = run(capsys, "rank2", "vars", "--b", "1", "--c", "1", "--from", "1", "--to", "6")
    assert code == 0
    data = json.loads(out)
    text = {x["m"]: x["text"] for x in data["vars"]}
    assert sorted(text) == [1, 2, 3, 4, 5, 6]
    assert text[6] == text[1] == "M(1,0)"


def test_seed_mutate(capsys):
    code, out = run(capsys, "seed", "mutate", "--b", "[[0,1],[-1,0]]",
                    "--lambda", "[[0,1],[-1,0]]", "--dirs", "1")
    assert code == 0
    assert "M(-1,0) + M(-1,1)" in out


def test_verify_thm1_a2(capsys):
    code, out = run(capsys, "verify", "thm1", "--quiver", "a2", "--dmax", "2,2",
                    "--samples", "2,3,4,5")
    assert code == 0
    data = json.loads(out)
    assert data["passed"] and data["status_counts"] == {"pass": data["checked"]}


def test_cc_char(capsys):
    code, out = run(capsys, "cc", "char", "--quiver", "a2", "--dim", "0,1")
    assert code == 0
    assert json.loads(out)["text"] == "M(0,-1) + M(1,-1)"


def test_oracle_eps(capsys):
    code, out = run(capsys, "oracle", "eps", "--quiver", "a2", "--q", "2",
                    "--module", "S1", "--other", "S2")
    assert code == 0
    data = json.loads(out)
    assert data["epsilon"] == {"E11": 1, "S2+S1": 1} and data["sum"] == 2


def test_oracle_hall_text(capsys):
    code, out = run(capsys, "oracle", "hall", "--quiver", "a2", "--q", "2", "--dmax", "1,1",
                    "--format", "text")
    assert code == 0
    assert "hall E11 S1 S2 1" in out.splitlines()


def test_lemma1(capsys):
    code, out = run(capsys, "verify", "lemma1", "--quiver", "a2", "--grid", "2", "--random", "100")
    assert code == 0 and json.loads(out)["passed"]


def test_basis_check(capsys):
    code, out = run(capsys, "basis", "check", "--b", "1", "--c", "1", "--radius", "1")
    assert code == 0 and json.loads(out)["passed"]


def test_out_file(tmp_path, capsys):
    dest = tmp_path / "vars.json"
    code, out = run(capsys, "--out", str(dest), "rank2", "vars", "--b", "1", "--c", "2")
    assert code == 0 and out == ""
    assert json.loads(dest.read_text())["c"] == 2


@pytest.mark.parametrize("argv", [
    [],
    ["rank2", "vars", "--b", "1"],
    ["verify", "thm1", "--quiver", "no-such-quiver"],
    ["verify", "thm1", "--quiver", "kronecker"],
    ["seed", "mutate", "--b", "[[0,1],[-1,0]]", "--lambda", "[[0,1],[1,0]]", "--dirs", "1"],
])
def test_usage_errors(argv, capsys):
    assert main(argv) == 2


def _cli(args, threads=1):
    env = dict(os.environ)
    cmd = [sys.executable, "-m", "qcc.cli", "--threads", str(threads), *args]
    return subprocess.run(cmd, capture_output=True, env=env, check=False)


@pytest.mark.parametrize("args", [
    ["verify", "thm1", "--quiver", "a2", "--dmax", "1,1"],
    ["verify", "cor2", "--quiver", "b2", "--grid", "2", "--random", "200"],
    ["cc", "char", "--quiver", "b2", "--module", "E12"],
])
def test_byte_identical_across_runs_and_threads(args):
    a = _cli(args, 1)
    b = _cli(args, 1)
    c = _cli(args, 4)
    assert a.returncode == 0
    assert a.stdout == b.stdout == c.stdout
