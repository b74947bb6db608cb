"""Compatible pairs, matrix mutation and quantum seed mutation."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .qring import ONE, QCoeff, NonExactDivision
from .torus import SkewForm, TorusElement, monomial, normalization_exponent

Matrix = tuple[tuple[int, ...], ...]


class Incompatible(ValueError):
    pass


def _as_matrix(rows: Sequence[Sequence[int]]) -> Matrix:
    return tuple(tuple(int(x) for x in r) for r in rows)


@dataclass(frozen=True)
class Compatibility:
    d: tuple[int, ...]
    # column of (B^T L) holding the diagonal entry of row i
    permutation: tuple[int, ...]


def check_compatible(lam: Sequence[Sequence[int]], btilde: Sequence[Sequence[int]]) -> Compatibility:
    """Return D with B^T L = (D|0) up to a column permutation."""
    L = np.array(lam, dtype=object)
    B = np.array(btilde, dtype=object)
    if L.ndim != 2 or L.shape[0] != L.shape[1]:
        raise ValueError("Lambda must be square")
    m = L.shape[0]
    if B.ndim != 2 or B.shape[0] != m or B.shape[1] > m:
        raise ValueError(f"B~ must be {m} x n with n <= {m}, got {B.shape}")
    if (L.T != -L).any():
        raise ValueError("Lambda is not skew-symmetric")
    P = B.T.dot(L)
    n = B.shape[1]
    d: list[int] = []
    perm: list[int] = []
    for i in range(n):
        nz = [j for j in range(m) if P[i, j] != 0]
        if len(nz) != 1 or P[i, nz[0]] <= 0:
            raise Incompatible(f"row {i} of B^T Lambda is {list(P[i])}")
        perm.append(nz[0])
        d.append(int(P[i, nz[0]]))
    if len(set(perm)) != n:
        raise Incompatible("diagonal entries share a column")
    return Compatibility(tuple(d), tuple(perm))


def mutate_matrix(btilde: Sequence[Sequence[int]], k: int) -> Matrix:
    """Matrix mutation in direction k (1-based)."""
    B = _as_matrix(btilde)
    m = len(B)
    n = len(B[0]) if m else 0
    if not 1 <= k <= n:
        raise IndexError(f"direction {k} outside 1..{n}")
    k -= 1
    out = []
    for i in range(m):
        row = []
        for j in range(n):
            if i == k or j == k:
                row.append(-B[i][j])
            else:
                bik, bkj = B[i][k], B[k][j]
                row.append(B[i][j] + (abs(bik) * bkj + bik * abs(bkj)) // 2)
        out.append(tuple(row))
    return tuple(out)


def exchange_matrix_e(btilde: Sequence[Sequence[int]], k: int) -> Matrix:
    """The m x m matrix E used in toric-frame mutation (k is 1-based)."""
    B = _as_matrix(btilde)
    m = len(B)
    k -= 1
    rows = []
    for i in range(m):
        row = []
        for j in range(m):
            if j != k:
                row.append(1 if i == j else 0)
            elif i == k:
                row.append(-1)
            else:
                row.append(max(0, -B[i][k]))
        rows.append(tuple(row))
    return tuple(rows)


@dataclass(frozen=True)
class QuantumSeed:
    lam: SkewForm
    btilde: Matrix
    vars: tuple[TorusElement, ...]
    # form of the current toric frame
    frame_lam: SkewForm = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        if self.frame_lam is None:
            object.__setattr__(self, "frame_lam", self.lam)

    @property
    def m(self) -> int:
        return len(self.btilde)

    @property
    def n(self) -> int:
        return len(self.btilde[0])

    @classmethod
    def initial(cls, lam: Sequence[Sequence[int]], btilde: Sequence[Sequence[int]]) -> QuantumSeed:
        ctx = SkewForm(lam)
        B = _as_matrix(btilde)
        check_compatible(ctx.matrix, B)
        xs = tuple(monomial(ctx, tuple(1 if j == i else 0 for j in range(ctx.rank))) for i in range(ctx.rank))
        return cls(ctx, B, xs)

    def frame_monomial(self, c: Sequence[int]) -> TorusElement:
        """M(c) of the current frame for c >= 0 (products of current variables)."""
        out = TorusElement.one(self.lam)
        for i, ci in enumerate(c):
            if ci < 0:
                raise ValueError("frame_monomial needs nonnegative exponents")
            if ci:
                out = out * self.vars[i] ** ci
        return out.scale(QCoeff.v(normalization_exponent(self.frame_lam, c)))

    def to_json(self) -> dict:
        return {
            "lambda": self.lam.to_json(),
            "frame_lambda": self.frame_lam.to_json(),
            "btilde": [list(r) for r in self.btilde],
            "vars": [x.to_json()["terms"] for x in self.vars],
        }


def mutate_seed(seed: QuantumSeed, k: int) -> QuantumSeed:
    """Mutation in direction k (1-based) via the q-binomial exchange rule."""
    if not 1 <= k <= seed.n:
        raise IndexError(f"direction {k} outside 1..{seed.n}")
    B = seed.btilde
    kk = k - 1
    col = [B[i][kk] for i in range(seed.m)]
    a_plus = tuple(max(0, b) for b in col)
    a_minus = tuple(max(0, -b) for b in col)
    lam = seed.frame_lam
    ek = tuple(1 if i == kk else 0 for i in range(seed.m))
    # M(a - e_k) = q^{L(e_k, a)/2} X_k^{-1} M(a) for a with a_k = 0
    numer = seed.frame_monomial(a_minus).scale(QCoeff.v(lam(ek, a_minus)))
    numer = numer + seed.frame_monomial(a_plus).scale(QCoeff.v(lam(ek, a_plus)))
    new_var = numer.left_divide(seed.vars[kk])
    E = np.array(exchange_matrix_e(B, k), dtype=object)
    L = np.array(lam.matrix, dtype=object)
    new_frame = SkewForm(E.T.dot(L).dot(E).tolist())
    new_vars = list(seed.vars)
    new_vars[kk] = new_var
    return QuantumSeed(seed.lam, mutate_matrix(B, k), tuple(new_vars), new_frame)


def mutation_sequence(seed: QuantumSeed, dirs: Sequence[int]) -> QuantumSeed:
    for k in dirs:
        seed = mutate_seed(seed, k)
    return seed


def expand_frame_mutation(seed: QuantumSeed, c: Sequence[int], k: int) -> TorusElement:
    """Sum_p [c_k, p]_{q^{d_k/2}} M(Ec + p b^k) in the current frame.

    Only valid when the vectors E c + p b^k are nonnegative except possibly
    at the exchanged index k, where a single inverse of X_k is allowed.
    """
    comp = check_compatible(seed.frame_lam.matrix, seed.btilde)
    from .qring import qbinom

    E = exchange_matrix_e(seed.btilde, k)
    kk = k - 1
    ck = c[kk]
    if ck < 0:
        raise ValueError("c_k must be nonnegative")
    bk = [seed.btilde[i][kk] for i in range(seed.m)]
    Ec = [sum(E[i][j] * c[j] for j in range(seed.m)) for i in range(seed.m)]
    lam = seed.frame_lam
    out = TorusElement.zero(seed.lam)
    for p in range(ck + 1):
        vec = [Ec[i] + p * bk[i] for i in range(seed.m)]
        out = out + _frame_element(seed, vec).scale(qbinom(ck, p, comp.d[kk]))
    return out


def _frame_element(seed: QuantumSeed, vec: Sequence[int]) -> TorusElement:
    """M(vec) where only negative entries are allowed on monomial variables."""
    lam = seed.frame_lam
    pos = tuple(max(0, x) for x in vec)
    neg = tuple(max(0, -x) for x in vec)
    base = seed.frame_monomial(pos)
    if not any(neg):
        return base
    inv = TorusElement.one(seed.lam)
    for i, e in enumerate(neg):
        if e:
            inv = inv * seed.vars[i] ** (-e)
    inv = inv.scale(QCoeff.v(normalization_exponent(lam, tuple(-x for x in neg))))
    # M(-n) M(p) = q^{L(-n,p)/2} M(p - n)
    return (inv * base).scale(QCoeff.v(-lam(tuple(-x for x in neg), pos)))


def rank2_vars(b: int, c: int, lo: int, hi: int) -> dict[int, TorusElement]:
    """Cluster variables X_lo..X_hi of the rank-2 recursion."""
    if lo > 1 or hi < 2:
        raise ValueError("range must contain 1 and 2")
    ctx = SkewForm([[0, 1], [-1, 0]])
    xs: dict[int, TorusElement] = {1: monomial(ctx, (1, 0)), 2: monomial(ctx, (0, 1))}
    one = TorusElement.one(ctx)

    def rhs(m: int) -> TorusElement:
        e = b if m % 2 else c
        return (xs[m] ** e).scale(QCoeff.v(e)) + one

    for m in range(2, hi):
        # X_{m-1} X_{m+1} = rhs(m)
        xs[m + 1] = rhs(m).left_divide(xs[m - 1])
    for m in range(1, lo, -1):
        # X_{m-1} X_{m+1} = rhs(m)
        xs[m - 1] = rhs(m).right_divide(xs[m + 1])
    return {m: xs[m] for m in range(lo, hi + 1)}


__all__ = [
    "Compatibility",
    "Incompatible",
    "NonExactDivision",
    "QuantumSeed",
    "check_compatible",
    "exchange_matrix_e",
    "expand_frame_mutation",
    "mutate_matrix",
    "mutate_seed",
    "mutation_sequence",
    "rank2_vars",
]
