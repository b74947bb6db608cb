"""Acceptance suite: eleven end-to-end criteria, each with a wall-clock budget.

Every criterion prints one PASS/FAIL line.  Run on its own with

    pytest tests/test_acceptance.py -v -s

or as a script (``python tests/test_acceptance.py``) for just the summary lines.
"""

from __future__ import annotations

import json
import os
import random
import subprocess
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from math import comb
from pathlib import Path

import pytest

from qcc.ccmap import CharacterEngine, cc_mutation_coincidence
from qcc.cli import main as cli_main
from qcc.qring import QCoeff, qbinom
from qcc.rank2basis import basis_check
from qcc.seedkit import rank2_vars
from qcc.speckit import PRESET_LAMBDA, preset
from qcc.torus import SkewForm, monomial

pytestmark = pytest.mark.acceptance


def _cli_json(tmp: Path, *argv) -> tuple[int, dict]:
    out = tmp / "out.json"
    if out.exists():
        out.unlink()
    code = cli_main(["--out", str(out), *argv])
    return code, json.loads(out.read_text()) if out.exists() else {}


# -- criteria --------------------------------------------------------------------------------

def crit1_torus(tmp):
    rng = random.Random(1)
    checks = 0
    while checks < 10_000:
        m = rng.randint(1, 4)
        L = [[0] * m for _ in range(m)]
        for i in range(m):
            for j in range(i + 1, m):
                L[i][j] = rng.randint(-3, 3)
                L[j][i] = -L[i][j]
        ctx = SkewForm(L)
        for _ in range(50):
            c = [rng.randint(-4, 4) for _ in range(m)]
            d = [rng.randint(-4, 4) for _ in range(m)]
            lam = ctx(c, d)
            Mc, Md = monomial(ctx, c), monomial(ctx, d)
            cd = [x + y for x, y in zip(c, d)]
            if Mc * Md != monomial(ctx, cd).scale(QCoeff.v(lam)):
                return False, f"product law fails at {c}, {d}"
            if Mc * Md != (Md * Mc).scale(QCoeff.v(2 * lam)):
                return False, f"commutation fails at {c}, {d}"
            checks += 1
    return True, f"{checks} random pairs"


def crit2_qbinom(tmp):
    for n in range(13):
        for k in range(n + 1):
            b = qbinom(n, k)
            if b.bar() != b or b.eval_at(1) != comb(n, k):
                return False, f"[{n},{k}]"
            if 0 < k < n:
                up = qbinom(n - 1, k).shift(-2 * k) + qbinom(n - 1, k - 1).shift(2 * (n - k))
                down = qbinom(n - 1, k).shift(2 * k) + qbinom(n - 1, k - 1).shift(-2 * (n - k))
                if b != up or b != down:
                    return False, f"Pascal at [{n},{k}]"
    return True, "n <= 12"


def crit3_rank2(tmp):
    periods = {(1, 1): 5, (1, 2): 6, (2, 1): 6, (1, 3): 8, (3, 1): 8}
    for (b, c), p in periods.items():
        xs = rank2_vars(b, c, -5 - p, 12 + p)  # NonExactDivision would propagate
        for m in range(-5, 13):
            if xs[m + p] != xs[m] or xs[m - p] != xs[m]:
                return False, f"({b},{c}) period breaks at m={m}"
    return True, "periods 5, 6, 6, 8, 8"


def crit4_identities(tmp):
    seen = []
    for q in ("a2", "kronecker22", "b2"):
        for what in ("lemma1", "cor2"):
            code, data = _cli_json(tmp, "verify", what, "--quiver", q, "--grid", "5",
                                   "--random", "10000", "--hi", "50")
            if code != 0 or not data["passed"]:
                return False, f"{what} on {q}: {data.get('first_failure')}"
            seen.append(data["exhaustive"] + data["random"])
    return True, f"{sum(seen)} vectors"


def crit5_thm1(tmp):
    counts = []
    for q in ("a2", "kronecker22"):
        code, data = _cli_json(tmp, "verify", "thm1", "--quiver", q, "--dmax", "2,2",
                               "--samples", "2,3,4,5,7")
        if code != 0:
            return False, f"{q}: {data.get('status_counts')}"
        counts.append(f"{q} {data['checked']} pairs")
    return True, ", ".join(counts)


def crit6_valued(tmp):
    # sums up to (2,2) cover every pair with both dimensions at most (1,1)
    code, data = _cli_json(tmp, "verify", "thm1", "--quiver", "b2", "--mode", "numeric",
                           "--dmax", "2,2", "--q", "2,3")
    return code == 0, f"b2 {data.get('checked')} (pair, q) checks"


def crit7_thm2(tmp):
    counts = []
    for q in ("a2", "kronecker22"):
        code, data = _cli_json(tmp, "verify", "thm2", "--quiver", q, "--dmax", "2,2",
                               "--samples", "2,3,4,5,7", "--strata")
        if code != 0:
            return False, f"{q}: {data.get('status_counts')}"
        counts.append(f"{q} {data['checked']} pairs")
    return True, ", ".join(counts)


def crit8_green(tmp):
    counts = []
    for q in ("a2", "kronecker"):
        code, data = _cli_json(tmp, "verify", "green", "--quiver", q, "--per-module", "2",
                               "--q", "2", "--eps-q", "2,3")
        if code != 0:
            return False, f"{q}: {data.get('results')}"
        g = sum(r.get("green_checked", 0) for r in data["results"])
        counts.append(f"{q} {g} Green tuples")
    return True, ", ".join(counts)


def crit9_coincidence(tmp):
    sizes = []
    for q in ("a2", "b2"):
        Q = preset(q)
        rep = cc_mutation_coincidence(CharacterEngine(Q, PRESET_LAMBDA[q]))
        if not rep.passed:
            return False, json.dumps(rep.to_json())
        sizes.append(f"{q} {len(rep.mutation)}")
    ok = sizes[0] == "a2 5"
    return ok, "cluster variables: " + ", ".join(sizes)


def crit10_basis(tmp):
    for b, c in ((1, 1), (1, 2), (1, 3)):
        rep = basis_check(b, c, 3)
        if not rep.passed:
            return False, f"({b},{c}): {rep.errors[:2]}"
    return True, "(1,1), (1,2), (1,3) at radius 3"


DETERMINISM_COMMANDS = [
    ["seed", "mutate", "--b", "[[0,1],[-1,0]]", "--lambda", "[[0,1],[-1,0]]", "--dirs", "1,2,1"],
    ["rank2", "vars", "--b", "1", "--c", "3", "--from", "-3", "--to", "9"],
    ["cc", "char", "--quiver", "b2", "--dim", "1,1", "--inj", "0,1"],
    ["verify", "thm1", "--quiver", "a2", "--dmax", "2,2"],
    ["verify", "thm1", "--quiver", "b2", "--mode", "numeric", "--dmax", "1,1", "--q", "2"],
    ["verify", "thm2", "--quiver", "a2", "--dmax", "2,2", "--strata", "--q", "2,3"],
    ["verify", "green", "--quiver", "a2", "--per-module", "2", "--q", "2"],
    ["verify", "lemma1", "--quiver", "b2", "--grid", "3", "--random", "500"],
    ["verify", "cor2", "--quiver", "kronecker22", "--grid", "2", "--random", "500"],
    ["basis", "check", "--b", "1", "--c", "2", "--radius", "2"],
    ["oracle", "gr", "--quiver", "kronecker", "--q", "3", "--module", "R1"],
    ["oracle", "hall", "--quiver", "a2", "--q", "3", "--dmax", "1,2", "--format", "text"],
    ["oracle", "eps", "--quiver", "kronecker", "--q", "2", "--module", "S1", "--other", "S2"],
    ["oracle", "strata", "--quiver", "a2", "--q", "3", "--module", "E11", "--inj", "0,1"],
]


def crit11_determinism(tmp):
    def run(job):
        args, threads, cache = job
        env = dict(os.environ)
        cmd = [sys.executable, "-m", "qcc.cli", "--threads", str(threads), *args]
        if args[0] == "oracle" and args[1] == "hall":
            cmd += ["--cache-dir", str(cache)]
        return subprocess.run(cmd, capture_output=True, env=env, check=False)

    jobs = []
    for i, args in enumerate(DETERMINISM_COMMANDS):
        cache = tmp / f"cache{i}"
        jobs += [(args, 1, cache), (args, 1, cache), (args, 4, cache)]
    with ThreadPoolExecutor(max_workers=os.cpu_count() or 2) as ex:
        # the first run per command fills the cache; the remaining two read it
        first = list(ex.map(run, jobs[0::3]))
        rest = list(ex.map(run, [j for k, j in enumerate(jobs) if k % 3]))
    for i, args in enumerate(DETERMINISM_COMMANDS):
        outs = [first[i], rest[2 * i], rest[2 * i + 1]]
        if any(o.returncode != 0 for o in outs):
            return False, f"{' '.join(args)} exited {[o.returncode for o in outs]}"
        if len({o.stdout for o in outs}) != 1:
            return False, f"{' '.join(args)} differs between runs"
    return True, f"{len(DETERMINISM_COMMANDS)} commands x 3 runs"


CRITERIA = [
    (1, "torus laws", crit1_torus, 10),
    (2, "q-binomials", crit2_qbinom, 1),
    (3, "rank-2 recursion", crit3_rank2, 5),
    (4, "skew-form identities", crit4_identities, 10),
    (5, "module product formula, symbolic", crit5_thm1, 300),
    (6, "module product formula, valued", crit6_valued, 300),
    (7, "shifted injective formula + strata", crit7_thm2, 300),
    (8, "epsilon sum + Green", crit8_green, 300),
    (9, "characters = cluster variables", crit9_coincidence, 30),
    (10, "rank-2 basis", crit10_basis, 120),
    (11, "CLI determinism", crit11_determinism, 60),
]


def evaluate(fn, limit, tmp):
    t0 = time.perf_counter()
    try:
        ok, detail = fn(tmp)
    except Exception as exc:  # report, do not crash the summary
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    dt = time.perf_counter() - t0
    if ok and dt > limit:
        ok, detail = False, f"{detail}; over budget"
    return ok, dt, detail


def line(num, name, ok, dt, limit, detail) -> str:
    return f"[{'PASS' if ok else 'FAIL'}] {num:>2}. {name} ({dt:.1f}s / {limit}s): {detail}"


@pytest.mark.parametrize("num,name,fn,limit", CRITERIA, ids=[f"c{c[0]}" for c in CRITERIA])
def test_criterion(num, name, fn, limit, tmp_path, capsys):
    ok, dt, detail = evaluate(fn, limit, tmp_path)
    with capsys.disabled():
        print("\n" + line(num, name, ok, dt, limit, detail))
    assert ok, detail


if __name__ == "__main__":
    import tempfile

    bad = 0
    for num, name, fn, limit in CRITERIA:
        with tempfile.TemporaryDirectory() as d:
            ok, dt, detail = evaluate(fn, limit, Path(d))
        bad += not ok
        print(line(num, name, ok, dt, limit, detail), flush=True)
    sys.exit(1 if bad else 0)
