"""Valued quivers: derived matrices, Euler form and matrix identity checks."""

from __future__ import annotations

import itertools
import random
import re
from dataclasses import dataclass
from functools import cached_property
from math import gcd
from typing import Sequence

import numpy as np


class CyclicQuiver(ValueError):
    pass


class NonSymmetrizable(ValueError):
    pass


class IncompatibleLambda(ValueError):
    pass


@dataclass(frozen=True)
class Arrow:
    source: int  # 1-based
    target: int
    a_st: int  # a_{source,target}
    a_ts: int


@dataclass(frozen=True)
class ValuedQuiverData:
    m: int
    n: int
    d: tuple[int, ...]
    arrows: tuple[Arrow, ...]
    name: str = ""

    # -- derived matrices (integer numpy arrays) --------------------------
    @cached_property
    def rtilde(self) -> np.ndarray:
        R = np.zeros((self.m, self.n), dtype=np.int64)
        for a in self.arrows:
            if a.source <= self.n:
                R[a.target - 1, a.source - 1] += a.a_ts
        return R

    @cached_property
    def rprime(self) -> np.ndarray:
        R = np.zeros((self.m, self.n), dtype=np.int64)
        for a in self.arrows:
            if a.target <= self.n:
                R[a.source - 1, a.target - 1] += a.a_st
        return R

    @cached_property
    def btilde(self) -> np.ndarray:
        return self.rprime - self.rtilde

    @cached_property
    def itilde(self) -> np.ndarray:
        return np.eye(self.m, self.n, dtype=np.int64)

    @cached_property
    def dn(self) -> np.ndarray:
        return np.diag(np.array(self.d[: self.n], dtype=np.int64))

    @cached_property
    def euler_matrix(self) -> np.ndarray:
        R = self.rtilde[: self.n]
        return (np.eye(self.n, dtype=np.int64) - R.T) @ self.dn

    @cached_property
    def soc_matrix(self) -> np.ndarray:
        """(I~ - R~') : dimension vectors of S-modules -> Z^m."""
        return self.itilde - self.rprime

    def arrows_out(self, i: int) -> list[Arrow]:
        return [a for a in self.arrows if a.source == i]

    def arrows_in(self, i: int) -> list[Arrow]:
        return [a for a in self.arrows if a.target == i]

    @property
    def equally_valued(self) -> bool:
        return len(set(self.d)) == 1

    @property
    def d_gcd(self) -> int:
        g = 0
        for x in self.d:
            g = gcd(g, x)
        return g

    def principal(self) -> ValuedQuiverData:
        arrows = tuple(a for a in self.arrows if a.source <= self.n and a.target <= self.n)
        return ValuedQuiverData(self.n, self.n, self.d[: self.n], arrows, self.name)

    def to_text(self) -> str:
        lines = [f"vertices {self.m}", f"principal {self.n}", "valuations " + " ".join(map(str, self.d))]
        for a in self.arrows:
            lines.append(f"{a.source} -> {a.target} ({a.a_st}, {a.a_ts})")
        return "\n".join(lines) + "\n"

    def content_key(self) -> str:
        return self.to_text()


def build(vertices: int, valued_arrows: Sequence[tuple[int, int, int, int]], d: Sequence[int],
          principal: int | None = None, name: str = "") -> ValuedQuiverData:
    """Validate a valued quiver; arrows are (i, j, a_ij, a_ji), 1-based."""
    m = int(vertices)
    n = m if principal is None else int(principal)
    if not 1 <= n <= m:
        raise ValueError("principal part must have 1..m vertices")
    d = tuple(int(x) for x in d)
    if len(d) != m or any(x <= 0 for x in d):
        raise ValueError("need one positive valuation per vertex")
    arrows = []
    for i, j, aij, aji in valued_arrows:
        if i == j:
            raise CyclicQuiver(f"loop at vertex {i}")
        if not (1 <= i <= m and 1 <= j <= m):
            raise ValueError(f"arrow {i}->{j} outside 1..{m}")
        if aij <= 0 or aji <= 0:
            raise ValueError("valuations must be positive")
        if d[i - 1] * aij != d[j - 1] * aji:
            raise NonSymmetrizable(f"d_{i} a_{i}{j} != d_{j} a_{j}{i} for arrow {i}->{j}")
        arrows.append(Arrow(i, j, int(aij), int(aji)))
    _check_acyclic(m, arrows)
    return ValuedQuiverData(m, n, d, tuple(arrows), name)


def _check_acyclic(m: int, arrows: list[Arrow]) -> None:
    succ = {i: {a.target for a in arrows if a.source == i} for i in range(1, m + 1)}
    state: dict[int, int] = {}

    def visit(v: int) -> None:
        state[v] = 1
        for w in succ[v]:
            if state.get(w) == 1:
                raise CyclicQuiver("oriented cycle")
            if w not in state:
                visit(w)
        state[v] = 2

    for v in range(1, m + 1):
        if v not in state:
            visit(v)


_ARROW_RE = re.compile(r"^\s*(\d+)\s*->\s*(\d+)\s*(?:\(\s*(\d+)\s*,\s*(\d+)\s*\))?\s*$")


def parse_quiver(text: str, name: str = "") -> ValuedQuiverData:
    """Parse the plain-text quiver format.

    ::

        vertices 2
        principal 2          # optional, defaults to all vertices
        valuations 2 1
        1 -> 2 (1, 2)
    """
    m = None
    n = None
    d = None
    arrows = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, rest = line.partition(" ")
        if key in ("vertices", "vertices:"):
            m = int(rest)
        elif key in ("principal", "principal:"):
            n = int(rest)
        elif key in ("valuations", "valuations:", "d", "d:"):
            d = [int(x) for x in rest.replace(",", " ").split()]
        else:
            match = _ARROW_RE.match(line)
            if not match:
                raise ValueError(f"cannot parse quiver line: {raw!r}")
            i, j = int(match.group(1)), int(match.group(2))
            aij = int(match.group(3) or 1)
            aji = int(match.group(4) or 1)
            arrows.append((i, j, aij, aji))
    if m is None:
        raise ValueError("missing 'vertices' line")
    if d is None:
        d = [1] * m
    return build(m, arrows, d, n, name)


def rank2_quiver(b: int, c: int) -> ValuedQuiverData:
    """Valued rank-2 quiver whose exchange matrix is [[0, b], [-c, 0]]."""
    return build(2, [(1, 2, b, c)], (c, b), name=f"rank2({b},{c})")


PRESETS = {
    "a2": lambda: build(2, [(1, 2, 1, 1)], (1, 1), name="a2"),
    "kronecker": lambda: build(2, [(1, 2, 1, 1), (1, 2, 1, 1)], (1, 1), name="kronecker"),
    "kronecker22": lambda: rank2_quiver(2, 2),
    "b2": lambda: rank2_quiver(1, 2),
    "c2": lambda: rank2_quiver(2, 1),
    "g2": lambda: rank2_quiver(1, 3),
    "a3": lambda: build(3, [(1, 2, 1, 1), (2, 3, 1, 1)], (1, 1, 1), name="a3"),
}

# A skew form satisfying L(-B~) = [D_n; 0] for each preset
PRESET_LAMBDA = {
    "a2": [[0, 1], [-1, 0]],
    "kronecker22": [[0, 1], [-1, 0]],
    "b2": [[0, 1], [-1, 0]],
    "c2": [[0, 1], [-1, 0]],
    "g2": [[0, 1], [-1, 0]],
}


def preset(name: str) -> ValuedQuiverData:
    try:
        return PRESETS[name]()
    except KeyError:
        raise ValueError(f"unknown quiver preset {name!r}; known: {sorted(PRESETS)}") from None


def euler_form(Q: ValuedQuiverData, e: Sequence[int], f: Sequence[int]) -> int:
    e = np.asarray(e, dtype=np.int64)
    f = np.asarray(f, dtype=np.int64)
    if e.shape != (Q.n,) or f.shape != (Q.n,):
        raise ValueError(f"dimension vectors must have length {Q.n}")
    return int(e @ Q.euler_matrix @ f)


def check_lambda(Q: ValuedQuiverData, lam: Sequence[Sequence[int]]) -> np.ndarray:
    L = np.asarray(lam, dtype=np.int64)
    if L.shape != (Q.m, Q.m) or (L.T != -L).any():
        raise IncompatibleLambda("Lambda must be a skew-symmetric m x m matrix")
    target = np.zeros((Q.m, Q.n), dtype=np.int64)
    target[: Q.n] = Q.dn
    if not np.array_equal(-L @ Q.btilde, target):
        raise IncompatibleLambda(f"Lambda(-B~) = {(-L @ Q.btilde).tolist()} != [D_n; 0]")
    return L


def find_lambdas(Q: ValuedQuiverData, bound: int = 3) -> list[list[list[int]]]:
    """All skew forms with entries in [-bound, bound] compatible with Q."""
    if Q.m > 3:
        raise ValueError("brute-force search is limited to m <= 3")
    pairs = [(i, j) for i in range(Q.m) for j in range(i + 1, Q.m)]
    found = []
    for vals in itertools.product(range(-bound, bound + 1), repeat=len(pairs)):
        L = np.zeros((Q.m, Q.m), dtype=np.int64)
        for (i, j), v in zip(pairs, vals):
            L[i, j] = v
            L[j, i] = -v
        try:
            check_lambda(Q, L)
        except IncompatibleLambda:
            continue
        found.append(L.tolist())
    return found


@dataclass
class IdentityReport:
    name: str
    lhs: int
    rhs: int

    @property
    def passed(self) -> bool:
        return self.lhs == self.rhs


def _lam(L: np.ndarray, x: np.ndarray, y: np.ndarray) -> int:
    return int(x @ L @ y)


def lemma1_check(Q: ValuedQuiverData, lam, m: Sequence[int], e: Sequence[int]) -> list[IdentityReport]:
    L = check_lambda(Q, lam)
    m = np.asarray(m, dtype=np.int64)
    e = np.asarray(e, dtype=np.int64)
    S = Q.soc_matrix
    B = Q.btilde
    r1 = IdentityReport("lemma1.1", _lam(L, S @ m, B @ e), -euler_form(Q, e, m))
    r2 = IdentityReport("lemma1.2", _lam(L, B @ e, B @ m), euler_form(Q, m, e) - euler_form(Q, e, m))
    return [r1, r2]


def corollary2_check(Q: ValuedQuiverData, lam, m, l, e, f) -> IdentityReport:
    L = check_lambda(Q, lam)
    m, l, e, f = (np.asarray(x, dtype=np.int64) for x in (m, l, e, f))
    S = Q.soc_matrix
    B = Q.btilde
    lhs = _lam(L, -B @ e - S @ m, -B @ f - S @ l)
    rhs = (_lam(L, S @ m, S @ l) + euler_form(Q, f, e) - euler_form(Q, e, f)
           + euler_form(Q, e, l) - euler_form(Q, f, m))
    return IdentityReport("corollary2", lhs, rhs)


def random_identity_sweep(Q: ValuedQuiverData, lam, count: int, hi: int, seed: int = 0) -> int:
    """Run lemma1/corollary2 on random vectors; return number of failures."""
    rng = random.Random(seed)
    fails = 0
    n = Q.n
    for _ in range(count):
        m, l, e, f = ([rng.randint(0, hi) for _ in range(n)] for _ in range(4))
        if not all(r.passed for r in lemma1_check(Q, lam, m, e)):
            fails += 1
        if not corollary2_check(Q, lam, m, l, e, f).passed:
            fails += 1
    return fails


def soc_identity_check(Q: ValuedQuiverData, inj_mult: Sequence[int], q: int = 2) -> IdentityReport:
    """Compare (I~ - R~') dim I with the socle measured on a realization."""
    from .reps import Realization, injective_module, socle_dim

    real = Realization(Q, q)
    I = injective_module(real, inj_mult)
    i = np.asarray(I.dims, dtype=np.int64)
    lhs = (Q.soc_matrix @ i).tolist()
    rhs = list(socle_dim(I))
    return IdentityReport("soc", tuple(lhs), tuple(rhs))  # type: ignore[arg-type]


def _bil(L: np.ndarray, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    """Row-wise x^T L y for stacked vectors."""
    return ((X @ L) * Y).sum(axis=1)


def lemma1_batch(Q: ValuedQuiverData, lam, M, E) -> np.ndarray:
    """Vectorized lemma1_check over rows of M and E; boolean array of passes."""
    L = np.asarray(check_lambda(Q, lam), dtype=np.int64)
    M = np.asarray(M, dtype=np.int64)
    E = np.asarray(E, dtype=np.int64)
    S, B, Eu = Q.soc_matrix, Q.btilde, Q.euler_matrix
    SM, BE, BM = M @ S.T, E @ B.T, M @ B.T
    em, me = _bil(Eu, E, M), _bil(Eu, M, E)
    ok1 = _bil(L, SM, BE) == -em
    ok2 = _bil(L, BE, BM) == me - em
    return ok1 & ok2


def corollary2_batch(Q: ValuedQuiverData, lam, M, Lv, E, Fv) -> np.ndarray:
    L = np.asarray(check_lambda(Q, lam), dtype=np.int64)
    M, Lv, E, Fv = (np.asarray(x, dtype=np.int64) for x in (M, Lv, E, Fv))
    S, B, Eu = Q.soc_matrix, Q.btilde, Q.euler_matrix
    lhs = _bil(L, -(E @ B.T) - M @ S.T, -(Fv @ B.T) - Lv @ S.T)
    rhs = (_bil(L, M @ S.T, Lv @ S.T) + _bil(Eu, Fv, E) - _bil(Eu, E, Fv)
           + _bil(Eu, E, Lv) - _bil(Eu, Fv, M))
    return lhs == rhs
