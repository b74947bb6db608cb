"""Based quantum torus over a skew form.

Elements are stored in the normalized monomial basis ``M(c)``, with
``M(c) M(d) = q^{L(c,d)/2} M(c+d)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .qring import ONE, QCoeff, NonExactDivision

Vec = tuple[int, ...]


class ContextMismatch(ValueError):
    pass


class ZeroElement(ValueError):
    pass


class NotUnique(Exception):
    """Several incomparable minimal exponents."""

    def __init__(self, minima: list[Vec]):
        super().__init__(f"no unique minimal exponent: {minima}")
        self.minima = minima


@dataclass(frozen=True)
class SkewForm:
    matrix: tuple[tuple[int, ...], ...]

    def __init__(self, matrix: Sequence[Sequence[int]]):
        mat = tuple(tuple(int(x) for x in row) for row in matrix)
        m = len(mat)
        if any(len(row) != m for row in mat):
            raise ValueError("skew form must be square")
        for i in range(m):
            for j in range(m):
                if mat[i][j] != -mat[j][i]:
                    raise ValueError("matrix is not skew-symmetric")
        object.__setattr__(self, "matrix", mat)

    @property
    def rank(self) -> int:
        return len(self.matrix)

    def __call__(self, c: Sequence[int], d: Sequence[int]) -> int:
        mat = self.matrix
        total = 0
        for i, ci in enumerate(c):
            if ci:
                row = mat[i]
                for j, dj in enumerate(d):
                    if dj:
                        total += ci * row[j] * dj
        return total

    def to_json(self) -> list[list[int]]:
        return [list(r) for r in self.matrix]


class TorusElement:
    """Finite Z[q^{1/2}]-combination of normalized monomials M(c)."""

    __slots__ = ("ctx", "_terms")

    def __init__(self, ctx: SkewForm, terms: Mapping[Vec, QCoeff] | None = None):
        self.ctx = ctx
        clean: dict[Vec, QCoeff] = {}
        for c, a in (terms or {}).items():
            c = tuple(int(x) for x in c)
            if len(c) != ctx.rank:
                raise ValueError(f"exponent {c} has wrong length for rank {ctx.rank}")
            if not isinstance(a, QCoeff):
                a = QCoeff.const(a)
            if a:
                clean[c] = clean[c] + a if c in clean else a
        self._terms = {c: a for c, a in clean.items() if a}

    # -- constructors ---------------------------------------------------
    @classmethod
    def one(cls, ctx: SkewForm) -> TorusElement:
        return cls(ctx, {(0,) * ctx.rank: ONE})

    @classmethod
    def zero(cls, ctx: SkewForm) -> TorusElement:
        return cls(ctx)

    @classmethod
    def scalar(cls, ctx: SkewForm, a) -> TorusElement:
        return cls(ctx, {(0,) * ctx.rank: a})

    # -- access -----------------------------------------------------------
    @property
    def terms(self) -> dict[Vec, QCoeff]:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def exponents(self) -> list[Vec]:
        return sorted(self._terms)

    def coeff(self, c: Sequence[int]) -> QCoeff:
        return self._terms.get(tuple(c), QCoeff())

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def _check(self, other: TorusElement) -> None:
        if self.ctx != other.ctx:
            raise ContextMismatch("torus elements over different skew forms")

    def __eq__(self, other) -> bool:
        if not isinstance(other, TorusElement):
            return NotImplemented
        return self.ctx == other.ctx and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.ctx, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        return f"TorusElement({self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for c, a in sorted(self._terms.items()):
            mono = "M(" + ",".join(str(x) for x in c) + ")"
            if a == ONE:
                parts.append(mono)
            else:
                parts.append(f"({a})*{mono}")
        return " + ".join(parts)

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other: TorusElement) -> TorusElement:
        if not isinstance(other, TorusElement):
            return NotImplemented
        self._check(other)
        out = dict(self._terms)
        for c, a in other._terms.items():
            out[c] = out[c] + a if c in out else a
        return TorusElement(self.ctx, out)

    def __neg__(self) -> TorusElement:
        return TorusElement(self.ctx, {c: -a for c, a in self._terms.items()})

    def __sub__(self, other: TorusElement) -> TorusElement:
        return self + (-other)

    def scale(self, a: QCoeff | int) -> TorusElement:
        if isinstance(a, int):
            a = QCoeff.const(a)
        return TorusElement(self.ctx, {c: a * b for c, b in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (QCoeff, int)):
            return self.scale(other)
        if not isinstance(other, TorusElement):
            return NotImplemented
        self._check(other)
        lam = self.ctx
        out: dict[Vec, QCoeff] = {}
        for c, a in self._terms.items():
            for d, b in other._terms.items():
                e = tuple(x + y for x, y in zip(c, d))
                t = (a * b).shift(lam(c, d))
                out[e] = out[e] + t if e in out else t
        return TorusElement(self.ctx, out)

    def __rmul__(self, other):
        if isinstance(other, (QCoeff, int)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int) -> TorusElement:
        if n < 0:
            if len(self._terms) != 1:
                raise NonExactDivision("negative power of a non-monomial")
            (c, a), = self._terms.items()
            inv = TorusElement(self.ctx, {tuple(-x for x in c): a ** -1})
            return inv ** (-n)
        out = TorusElement.one(self.ctx)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def bar_coefficients(self) -> TorusElement:
        """Apply the bar involution to every coefficient."""
        return TorusElement(self.ctx, {c: a.bar() for c, a in self._terms.items()})

    def map_coefficients(self, fn) -> TorusElement:
        return TorusElement(self.ctx, {c: fn(a) for c, a in self._terms.items()})

    # -- division -----------------------------------------------------------
    def _lead(self) -> tuple[Vec, QCoeff]:
        c = min(self._terms)
        return c, self._terms[c]

    def left_divide(self, divisor: TorusElement) -> TorusElement:
        """Return Q with divisor * Q == self, or raise NonExactDivision."""
        return self._divide(divisor, left=True)

    def right_divide(self, divisor: TorusElement) -> TorusElement:
        """Return P with P * divisor == self, or raise NonExactDivision."""
        return self._divide(divisor, left=False)

    def _divide(self, divisor: TorusElement, left: bool) -> TorusElement:
        self._check(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by zero torus element")
        lam = self.ctx
        dc, da = divisor._lead()
        dmax = max(divisor._terms)
        rem = dict(self._terms)
        quot: dict[Vec, QCoeff] = {}
        # lex order is a monomial order on Z^m: lead(A*B) = lead(A)+lead(B)
        limit = max(rem) if rem else None
        while rem:
            c = min(rem)
            a = rem[c]
            e = tuple(x - y for x, y in zip(c, dc))
            if tuple(x + y for x, y in zip(e, dmax)) > limit:
                raise NonExactDivision("remainder left after exact division")
            # divisor*M(e): coeff da*v^{L(dc,e)}; M(e)*divisor: da*v^{L(e,dc)}
            tw = lam(dc, e) if left else lam(e, dc)
            try:
                f = a.divexact(da).shift(-tw)
            except NonExactDivision:
                raise NonExactDivision(f"coefficient {a} not divisible by {da}") from None
            quot[e] = f
            mono = TorusElement(self.ctx, {e: f})
            prod = divisor * mono if left else mono * divisor
            for d, b in prod._terms.items():
                v = rem.get(d)
                v = -b if v is None else v - b
                if v:
                    rem[d] = v
                else:
                    rem.pop(d, None)
        return TorusElement(self.ctx, quot)

    # -- partial order ---------------------------------------------------------
    def min_exponent(self) -> Vec:
        """Unique componentwise-minimal exponent, else raise NotUnique."""
        minima = minimal_elements(self._terms)
        if not minima:
            raise ZeroElement("zero element has no exponents")
        if len(minima) > 1:
            raise NotUnique(minima)
        return minima[0]

    # -- interchange --------------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "rank": self.ctx.rank,
            "lambda": self.ctx.to_json(),
            "terms": [{"exp": list(c), "coeff": a.to_json()} for c, a in sorted(self._terms.items())],
        }

    @classmethod
    def from_json(cls, data: dict) -> TorusElement:
        ctx = SkewForm(data["lambda"])
        return cls(ctx, {tuple(t["exp"]): QCoeff.from_json(t["coeff"]) for t in data["terms"]})


def leq(r: Sequence[int], s: Sequence[int]) -> bool:
    return all(a <= b for a, b in zip(r, s))


def minimal_elements(vectors: Iterable[Vec]) -> list[Vec]:
    vs = sorted(set(vectors))
    return [v for v in vs if not any(w != v and leq(w, v) for w in vs)]


def monomial(ctx: SkewForm, c: Sequence[int]) -> TorusElement:
    if len(c) != ctx.rank:
        raise ValueError(f"exponent length {len(c)} != rank {ctx.rank}")
    return TorusElement(ctx, {tuple(c): ONE})


def normalization_exponent(ctx: SkewForm, c: Sequence[int]) -> int:
    """Exponent k (in v) with M(c) = v^k X_1^{c_1} ... X_m^{c_m}."""
    lam = ctx.matrix
    m = ctx.rank
    return sum(c[i] * c[j] * lam[j][i] for i in range(m) for j in range(i + 1, m))


def ordered_word(ctx: SkewForm, c: Sequence[int]) -> TorusElement:
    """The unnormalized ordered product X_1^{c_1} ... X_m^{c_m}."""
    if len(c) != ctx.rank:
        raise ValueError(f"exponent length {len(c)} != rank {ctx.rank}")
    return TorusElement(ctx, {tuple(c): QCoeff.v(-normalization_exponent(ctx, c))})


def mul(a: TorusElement, b: TorusElement) -> TorusElement:
    return a * b


def min_exponent(a: TorusElement) -> Vec:
    return a.min_exponent()
