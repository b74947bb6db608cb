"""Exact arithmetic in Z[q^{1/2}, q^{-1/2}].

Elements are Laurent polynomials in ``v = q^{1/2}`` with integer
coefficients.  ``QCoeff.v(k)`` builds ``q^{k/2}``.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Iterable, Mapping


class OddPowerAtNonSquare(ValueError):
    """Raised when an odd power of q^{1/2} is evaluated at a non-square q."""


class NonExactDivision(ArithmeticError):
    pass


def _clean(terms: Mapping[int, int]) -> dict[int, int]:
    return {e: c for e, c in terms.items() if c}


class QCoeff:
    """Immutable Laurent polynomial in v = q^{1/2}."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | None = None):
        self._terms: dict[int, int] = _clean(terms or {})
        self._hash = None

    # -- constructors -------------------------------------------------
    @classmethod
    def const(cls, c: int) -> QCoeff:
        return cls({0: int(c)})

    @classmethod
    def v(cls, k: int = 1, c: int = 1) -> QCoeff:
        """``c * v^k`` i.e. ``c * q^{k/2}``."""
        return cls({int(k): int(c)})

    @classmethod
    def from_poly_in_q(cls, coeffs: Iterable[int], qexp: int = 2) -> QCoeff:
        """Polynomial sum c_i Q^i with Q = v^qexp (default Q = q)."""
        out: dict[int, int] = {}
        for i, c in enumerate(coeffs):
            if c:
                out[i * qexp] = out.get(i * qexp, 0) + int(c)
        return cls(out)

    # -- basic protocol -----------------------------------------------
    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = QCoeff.const(other)
        if not isinstance(other, QCoeff):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"QCoeff({self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e, c in sorted(self._terms.items(), reverse=True):
            if e == 0:
                mono = ""
            elif e % 2 == 0:
                mono = "q" if e == 2 else f"q^{e // 2}"
            else:
                mono = f"q^({e}/2)"
            if not mono:
                parts.append(f"{c:+d}")
            elif c == 1:
                parts.append(f"+{mono}")
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{c:+d}*{mono}")
        s = " ".join(parts)
        return s[1:] if s.startswith("+") else s

    # -- ring operations ----------------------------------------------
    @staticmethod
    def _coerce(x) -> QCoeff:
        if isinstance(x, QCoeff):
            return x
        if isinstance(x, int):
            return QCoeff.const(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to QCoeff")

    def __add__(self, other) -> QCoeff:
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return QCoeff(out)

    __radd__ = __add__

    def __neg__(self) -> QCoeff:
        return QCoeff({e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> QCoeff:
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> QCoeff:
        return self._coerce(other) - self

    def __mul__(self, other) -> QCoeff:
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        out: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return QCoeff(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> QCoeff:
        if n < 0:
            if not self.is_unit():
                raise NonExactDivision("negative power of a non-unit")
            (e, c), = self._terms.items()
            return QCoeff({e * n: c if n % 2 else 1})
        out = QCoeff.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def shift(self, k: int) -> QCoeff:
        """Multiply by v^k."""
        if not k:
            return self
        return QCoeff({e + k: c for e, c in self._terms.items()})

    # -- structure ------------------------------------------------------
    def bar(self) -> QCoeff:
        return QCoeff({-e: c for e, c in self._terms.items()})

    def is_unit(self) -> bool:
        return len(self._terms) == 1 and abs(next(iter(self._terms.values()))) == 1

    def min_exp(self) -> int:
        return min(self._terms)

    def max_exp(self) -> int:
        return max(self._terms)

    def divexact(self, other: QCoeff) -> QCoeff:
        """Exact quotient self / other in Z[v^{+-1}]."""
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero QCoeff")
        if self.is_zero():
            return self
        lo = other.min_exp()
        lead = other._terms[lo]
        rem = dict(self._terms)
        quot: dict[int, int] = {}
        # long division from the lowest power up; bounded by degree span
        span = (self.max_exp() - self.min_exp()) - (other.max_exp() - lo)
        if span < 0:
            raise NonExactDivision(f"{self} / {other}")
        while rem:
            e = min(rem)
            c = rem[e]
            if c % lead:
                raise NonExactDivision(f"{self} / {other}")
            k = e - lo
            if quot and k - min(quot) > span:
                raise NonExactDivision(f"{self} / {other}")
            f = c // lead
            quot[k] = f
            for e2, c2 in other._terms.items():
                v = rem.get(e2 + k, 0) - f * c2
                if v:
                    rem[e2 + k] = v
                else:
                    rem.pop(e2 + k, None)
        return QCoeff(quot)

    def at_one(self) -> int:
        return sum(self._terms.values())

    def eval_at(self, q0) -> Fraction:
        """Substitute v = sqrt(q0) exactly."""
        q0 = Fraction(q0)
        if q0 <= 0:
            raise ValueError("q0 must be positive")
        root = _rational_sqrt(q0)
        if root is None and any(e % 2 for e in self._terms):
            raise OddPowerAtNonSquare(f"odd power of q^(1/2) at q={q0}")
        total = Fraction(0)
        for e, c in self._terms.items():
            if root is not None:
                total += c * root ** e
            else:
                total += c * q0 ** (e // 2)
        return total

    def eval_split(self, q0) -> tuple[Fraction, Fraction]:
        """Value at v = sqrt(q0) as a pair (r, s) meaning r + s*sqrt(q0)."""
        q0 = Fraction(q0)
        r = Fraction(0)
        s = Fraction(0)
        for e, c in self._terms.items():
            if e % 2 == 0:
                r += c * q0 ** (e // 2)
            else:
                s += c * q0 ** ((e - 1) // 2)
        return r, s

    def substitute_power(self, k: int) -> QCoeff:
        """Replace v by v^k."""
        return QCoeff({e * k: c for e, c in self._terms.items()})

    # -- interchange ----------------------------------------------------
    def to_json(self) -> list[list[int]]:
        return [[e, c] for e, c in sorted(self._terms.items())]

    @classmethod
    def from_json(cls, data) -> QCoeff:
        out: dict[int, int] = {}
        for e, c in data:
            out[int(e)] = out.get(int(e), 0) + int(c)
        return cls(out)


ZERO = QCoeff()
ONE = QCoeff.const(1)


def _rational_sqrt(x: Fraction) -> Fraction | None:
    n, d = x.numerator, x.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def add(a: QCoeff, b: QCoeff) -> QCoeff:
    return a + b


def mul(a: QCoeff, b: QCoeff) -> QCoeff:
    return a * b


def neg(a: QCoeff) -> QCoeff:
    return -a


def bar(a: QCoeff) -> QCoeff:
    return a.bar()


def eval_at(a: QCoeff, q0) -> Fraction:
    return a.eval_at(q0)


def qbinom(n: int, k: int, scale: int = 2) -> QCoeff:
    """Balanced quantum binomial [n, k]_t with t = v^scale.

    ``scale=2`` gives the usual ``[n k]_q``; subscripts of the form
    ``q^{d/2}`` correspond to ``scale=d``.
    """
    if n < 0 or k < 0 or k > n:
        raise ValueError(f"need 0 <= k <= n, got n={n}, k={k}")
    if scale <= 0:
        raise ValueError("scale must be positive")
    num = ONE
    den = ONE
    for j in range(k):
        a = n - j
        num = num * (QCoeff.v(a * scale) - QCoeff.v(-a * scale))
        b = j + 1
        den = den * (QCoeff.v(b * scale) - QCoeff.v(-b * scale))
    return num.divexact(den)


def gaussian_binomial_poly(n: int, k: int) -> list[int]:
    """Coefficients (in Q) of the ordinary Gaussian binomial (n choose k)_Q."""
    if k < 0 or k > n:
        return [0]
    # Pascal: C(n,k) = C(n-1,k-1) + Q^k C(n-1,k)
    table = {(0, 0): [1]}

    def get(a: int, b: int) -> list[int]:
        if b < 0 or b > a:
            return [0]
        if (a, b) in table:
            return table[(a, b)]
        left = get(a - 1, b - 1)
        right = [0] * b + get(a - 1, b)
        out = [0] * max(len(left), len(right))
        for i, c in enumerate(left):
            out[i] += c
        for i, c in enumerate(right):
            out[i] += c
        table[(a, b)] = out
        return out

    return get(n, k)
