"""Compare the compiled and pure-Python finite-field kernels.

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import importlib
import os
import subprocess
import sys
import time

import numpy as np

from qcc import _pykernels
from qcc.fields import field

try:
    _ck = importlib.import_module("qcc._ckernels")
except ImportError:
    _ck = None


def _time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def cases(rng):
    for q, shape in [(2, (40, 60)), (9, (30, 30)), (49, (24, 32))]:
        F = field(q)
        A = rng.integers(0, q, shape)
        yield f"rref q={q} {shape[0]}x{shape[1]}", lambda mod, A=A, F=F: mod.rref(A.copy(), *F.tables())
    for q, h, k in [(3, 4, 3), (4, 3, 3)]:
        F = field(q)
        basis = rng.integers(0, q, (h, k, k))
        yield (f"count_units q={q} h={h} {k}x{k}",
               lambda mod, b=basis, F=F: mod.count_units(b, *F.tables(), F.order))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--end-to-end", action="store_true",
                    help="also time a Grassmannian sweep under each backend")
    args = ap.parse_args()
    rng = np.random.default_rng(0)
    print(f"{'kernel':36s} {'python [s]':>12s} {'cython [s]':>12s} {'speedup':>8s}")
    for name, fn in cases(rng):
        tp = _time(lambda: fn(_pykernels), args.repeat)
        if _ck is None:
            print(f"{name:36s} {tp:12.5f} {'n/a':>12s} {'':>8s}")
            continue
        assert str(fn(_pykernels)) == str(fn(_ck))
        tc = _time(lambda: fn(_ck), args.repeat)
        print(f"{name:36s} {tp:12.5f} {tc:12.5f} {tp / tc:7.1f}x")
    if args.end_to_end:
        print()
        for label, env in [("python", {"QCC_PURE_PYTHON": "1"}), ("cython", {})]:
            t = time.perf_counter()
            out = subprocess.run([sys.executable, "-c", E2E], env={**os.environ, **env},
                                 capture_output=True, text=True, check=True).stdout.strip()
            print(f"end-to-end [{out}] {label:8s} {time.perf_counter() - t:8.2f} s")


E2E = """
import itertools
from qcc import kernels, catalog, reps
from qcc.speckit import preset
from qcc.repbrute import field_ctx
Q = preset('kronecker22')
tot = 0
for q in (2, 3, 4):
    R = field_ctx(Q, q)
    for D in catalog.iso_descriptors(Q, (2, 2)):
        M = catalog.realize(R, D)
        for e in itertools.product(*[range(x + 1) for x in M.dims]):
            tot += reps.gr_count_fast(M, e)
print(kernels.BACKEND, tot)
"""


if __name__ == "__main__":
    main()
