"""Finite fields F_{p^r} and extension towers realized with lookup tables.

An element of a field of order ``base.order ** degree`` is encoded as the
integer ``sum c_j * base.order**j`` where ``c_j`` are base-field digits,
i.e. the coefficients of a polynomial in the adjoined root ``t``.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np


def factor_prime_power(q: int) -> tuple[int, int]:
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    r = 0
    x = q
    while x % p == 0:
        x //= p
        r += 1
    if x != 1:
        raise ValueError(f"{q} is not a prime power")
    return p, r


def is_prime_power(q: int) -> bool:
    try:
        factor_prime_power(q)
    except ValueError:
        return False
    return True


def prime_powers(start: int = 2):
    q = start
    while True:
        if is_prime_power(q):
            yield q
        q += 1


class GF:
    """Finite field with full add/mul tables."""

    def __init__(self, order: int, base: GF | None, degree: int, modulus: tuple[int, ...] | None,
                 add: np.ndarray, mul: np.ndarray):
        self.order = order
        self.base = base
        self.degree = degree
        self.modulus = modulus
        self.add_t = add
        self.mul_t = mul
        self.neg_t = np.argmin(add, axis=1).astype(np.int64)
        inv = np.zeros(order, dtype=np.int64)
        for x in range(1, order):
            inv[x] = int(np.nonzero(mul[x] == 1)[0][0])
        self.inv_t = inv
        self.p = base.p if base is not None else order

    def __repr__(self) -> str:
        if self.base is None:
            return f"GF({self.order})"
        return f"GF({self.order} = {self.base.order}^{self.degree})"

    @property
    def is_prime(self) -> bool:
        return self.base is None

    # -- scalar helpers ------------------------------------------------------
    def digits(self, x: int) -> list[int]:
        """Coefficients of x over the base field (length = degree)."""
        b = self.base.order
        out = []
        for _ in range(self.degree):
            out.append(x % b)
            x //= b
        return out

    def from_digits(self, ds) -> int:
        b = self.base.order
        return sum(int(c) * b ** j for j, c in enumerate(ds))

    def from_int(self, k: int) -> int:
        """Image of the integer k under Z -> F."""
        return (k % self.p) if self.is_prime else self.embed_prime(k % self.p)

    def embed_prime(self, k: int) -> int:
        # prime subfield digits live in the constant coefficient all the way down
        return k

    def elements(self) -> range:
        return range(self.order)

    def tables(self):
        return self.add_t, self.mul_t, self.neg_t, self.inv_t

    def mul_matrix_of_root(self) -> np.ndarray:
        """Matrix of multiplication by the root t, acting on base-field digits."""
        if self.base is None:
            raise ValueError("prime field has no adjoined root")
        d = self.degree
        T = np.zeros((d, d), dtype=np.int64)
        t = self.base.order  # encoding of t
        for j in range(d):
            basis = self.base.order ** j
            prod = int(self.mul_t[t, basis])
            T[:, j] = self.digits(prod)
        return T


def _poly_mulmod(a, b, f, base: GF):
    """Product of digit lists a*b modulo monic f (all over base)."""
    add, mul, neg = base.add_t, base.mul_t, base.neg_t
    d = len(f) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    prod[i + j] = int(add[prod[i + j], mul[x, y]])
    for k in range(len(prod) - 1, d - 1, -1):
        c = prod[k]
        if c:
            for j in range(d + 1):
                prod[k - d + j] = int(add[prod[k - d + j], neg[mul[c, f[j]]]])
    return (prod + [0] * d)[:d]


def _poly_rem_is_zero(a: list[int], g: list[int], base: GF) -> bool:
    """Whether monic g divides a."""
    add, mul, neg = base.add_t, base.mul_t, base.neg_t
    a = list(a)
    dg = len(g) - 1
    for k in range(len(a) - 1, dg - 1, -1):
        c = a[k]
        if c:
            for j in range(dg + 1):
                a[k - dg + j] = int(add[a[k - dg + j], neg[mul[c, g[j]]]])
    return not any(a[:dg])


def _monic_polys(base: GF, degree: int):
    for lower in itertools.product(range(base.order), repeat=degree):
        # lower[0] is the constant term; iterate in increasing encoding order
        yield list(reversed(lower)) + [1]


def is_irreducible(f: list[int], base: GF) -> bool:
    d = len(f) - 1
    if d <= 1:
        return d == 1
    for k in range(1, d // 2 + 1):
        for g in _monic_polys(base, k):
            if _poly_rem_is_zero(f, g, base):
                return False
    return True


def smallest_irreducible(base: GF, degree: int) -> tuple[int, ...]:
    """Monic irreducible of the given degree with the smallest encoding."""
    for f in _monic_polys(base, degree):
        if f[0] and is_irreducible(f, base):
            return tuple(f)
    raise RuntimeError("no irreducible polynomial found")


@lru_cache(maxsize=None)
def prime_field(p: int) -> GF:
    a = np.arange(p, dtype=np.int64)
    add = (a[:, None] + a[None, :]) % p
    mul = (a[:, None] * a[None, :]) % p
    return GF(p, None, 1, None, add, mul)


@lru_cache(maxsize=None)
def extension(base: GF, degree: int) -> GF:
    if degree == 1:
        return base
    f = smallest_irreducible(base, degree)
    order = base.order ** degree
    b = base.order
    digits = [[(x // b ** j) % b for j in range(degree)] for x in range(order)]
    add = np.zeros((order, order), dtype=np.int64)
    mul = np.zeros((order, order), dtype=np.int64)
    powers = [b ** j for j in range(degree)]
    badd = base.add_t
    for x in range(order):
        dx = digits[x]
        for y in range(x, order):
            dy = digits[y]
            s = sum(int(badd[u, v]) * pw for u, v, pw in zip(dx, dy, powers))
            add[x, y] = add[y, x] = s
            pr = _poly_mulmod(dx, dy, f, base)
            mul[x, y] = mul[y, x] = sum(c * pw for c, pw in zip(pr, powers))
    return GF(order, base, degree, f, add, mul)


@lru_cache(maxsize=None)
def field(q: int) -> GF:
    """GF(q) as an extension of its prime field."""
    p, r = factor_prime_power(q)
    return extension(prime_field(p), r)


def check_field_axioms(F: GF) -> bool:
    add, mul = F.add_t, F.mul_t
    n = F.order
    idx = np.arange(n)
    if not (np.array_equal(add[0], idx) and np.array_equal(mul[1], idx)):
        return False
    if not (np.array_equal(add, add.T) and np.array_equal(mul, mul.T)):
        return False
    for x in range(1, n):
        if sorted(mul[x].tolist()) != list(range(n)):
            return False
    # distributivity on a deterministic sample
    rng = np.random.default_rng(n)
    for _ in range(200):
        x, y, z = (int(v) for v in rng.integers(0, n, 3))
        if mul[x, add[y, z]] != add[mul[x, y], mul[x, z]]:
            return False
        if mul[x, mul[y, z]] != mul[mul[x, y], z]:
            return False
    return True
