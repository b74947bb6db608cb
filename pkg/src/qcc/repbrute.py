"""Brute-force finite-field oracle: iso classes, Hall numbers, ε, Hom-strata,
Green's formula and interpolation of counting polynomials."""

from __future__ import annotations

import hashlib
import itertools
import json
import os
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import catalog
from . import linalg as la
from . import reps
from .fields import prime_powers
from .qring import QCoeff
from .reps import BoundExceeded, Module, NotInjective, Realization
from .speckit import ValuedQuiverData, euler_form

DEFAULT_SAMPLES = (2, 3, 4, 5, 7)


class NonPolynomial(ValueError):
    pass


class NonIntegerResult(ArithmeticError):
    pass


def field_ctx(Q: ValuedQuiverData, q: int) -> Realization:
    return catalog.realization(Q, q)


# -- iso classification --------------------------------------------------------

def signature(M: Module) -> tuple:
    return (M.dims, reps.hom_fdim(M, M), reps.socle_dim(M))


@dataclass
class IsoClassifier:
    """Grows a list of iso-class representatives; ids are stable names."""

    R: Realization
    reps_: dict[str, Module] = field(default_factory=dict)
    by_sig: dict[tuple, list[str]] = field(default_factory=dict)
    aut_: dict[str, int] = field(default_factory=dict)
    memo: dict = field(default_factory=dict)

    def seed(self, descriptors) -> None:
        for D in descriptors:
            M = catalog.realize(self.R, D)
            if self.lookup(M) is None:
                self._add(D.name, M)

    def _add(self, cid: str, M: Module) -> str:
        self.reps_[cid] = M
        self.by_sig.setdefault(signature(M), []).append(cid)
        return cid

    def lookup(self, M: Module) -> str | None:
        for cid in self.by_sig.get(signature(M), []):
            if reps.is_isomorphic(M, self.reps_[cid]):
                return cid
        return None

    def classify(self, M: Module) -> str:
        cid = self.lookup(M)
        if cid is not None:
            return cid
        base = "X" + "".join(str(x) for x in M.dims)
        k = sum(1 for c in self.reps_ if c.startswith(base + "#"))
        return self._add(f"{base}#{k}", M)

    def rep(self, cid: str) -> Module:
        return self.reps_[cid]

    def aut(self, cid: str) -> int:
        if cid not in self.aut_:
            self.aut_[cid] = reps.aut_count(self.reps_[cid])
        return self.aut_[cid]


_CLASSIFIERS: dict = {}


def classifier(Q: ValuedQuiverData, q: int, seed_bound=None) -> IsoClassifier:
    key = (Q.content_key(), q)
    if key not in _CLASSIFIERS:
        clf = IsoClassifier(field_ctx(Q, q))
        try:
            clf.seed(catalog.iso_descriptors(Q, seed_bound or (2,) * Q.principal().n))
        except catalog.DescriptorAmbiguous:
            pass
        _CLASSIFIERS[key] = clf
    return _CLASSIFIERS[key]


def gl_order(R: Realization, dims) -> int:
    out = 1
    for i, n in enumerate(dims):
        S = R.s ** R.delta[i]
        for t in range(n):
            out *= S ** n - S ** t
    return out


def enumerate_iso_classes(Q: ValuedQuiverData, dims, q: int, bound: int = 4,
                          clf: IsoClassifier | None = None) -> list[tuple[str, Module, int]]:
    """One representative per iso class of dimension ``dims`` with |Aut|.

    Scans Rep(dims) until the orbit sizes |GL|/|Aut| add up to |Rep(dims)|.
    """
    R = field_ctx(Q, q)
    dims = tuple(int(x) for x in dims)
    total = sum(d * x for d, x in zip(R.Q.d, dims))
    if total > bound:
        raise BoundExceeded(f"total dimension {total} exceeds {bound}")
    clf = clf or classifier(Q, q)
    shapes = [(R.vdim(j, dims[j]), R.vdim(i, dims[i])) for _, i, j, _ in R.arrow_list]
    nvars = sum(a * b for a, b in shapes)
    rep_size = R.s ** nvars
    gl = gl_order(R, dims)
    found: dict[str, Module] = {}
    mass = Fraction(0)
    for vals in itertools.product(range(R.s), repeat=nvars):
        maps, o = [], 0
        for a, b in shapes:
            maps.append(np.array(vals[o:o + a * b], dtype=np.int64).reshape(a, b))
            o += a * b
        M = reps.make_module(R, dims, maps)
        cid = clf.classify(M)
        if cid not in found:
            found[cid] = clf.rep(cid)
            mass += Fraction(gl, clf.aut(cid))
            if mass == rep_size:
                break
    if mass != rep_size:
        raise NonIntegerResult(f"orbit masses {mass} != |Rep| = {rep_size}")
    return sorted(((c, M, clf.aut(c)) for c, M in found.items()), key=lambda t: t[0])


# -- census ---------------------------------------------------------------------

def submodule_census(E: Module, clf: IsoClassifier):
    """F^E_{AB} (keyed (A, B): quotient, submodule) and |Gr_e E| for all e."""
    F: dict[tuple[str, str], int] = {}
    gr: dict[tuple[int, ...], int] = {}
    for e in itertools.product(*[range(x + 1) for x in E.dims]):
        cnt = 0
        for Us in reps.submodules(E, e):
            B = clf.classify(reps.submodule_of(E, Us))
            A = clf.classify(reps.quotient_of(E, Us))
            F[(A, B)] = F.get((A, B), 0) + 1
            cnt += 1
        gr[tuple(e)] = cnt
    return F, gr


def hom_ext_dims(M: Module, N: Module) -> tuple[int, int]:
    h = reps.hom_dim(M, N)
    return h, h - reps.euler(M, N)


def _cochain_dims(M: Module, N: Module) -> tuple[int, int]:
    """F_s-dimensions of C^0 = ⊕ Hom_{F_i}(M_i, N_i) and Z = ⊕ Hom_{F_s}(M_i, N_j)."""
    R = M.R
    c0 = sum(R.delta[i] * M.dims[i] * N.dims[i] for i in range(R.n))
    z = sum(M.fdim(i) * N.fdim(j) for _, i, j, _ in R.arrow_list)
    return c0, z


def extension_module(M: Module, N: Module, h) -> Module:
    """Middle term of the extension with cocycle h (N is the submodule)."""
    R = M.R
    maps = []
    for t, (ai, i, j, c) in enumerate(R.arrow_list):
        A = np.zeros((N.fdim(j) + M.fdim(j), N.fdim(i) + M.fdim(i)), dtype=np.int64)
        A[:N.fdim(j), :N.fdim(i)] = N.maps[t]
        A[:N.fdim(j), N.fdim(i):] = h[t]
        A[N.fdim(j):, N.fdim(i):] = M.maps[t]
        maps.append(A)
    dims = tuple(a + b for a, b in zip(N.dims, M.dims))
    return Module(R, dims, tuple(maps))


def extension_classes(M: Module, N: Module, clf: IsoClassifier, cap: int = 200_000) -> dict[str, Fraction]:
    """ε^E_{MN} for all E by enumerating cocycles (direct oracle)."""
    R = M.R
    c0, z = _cochain_dims(M, N)
    if R.s ** z > cap:
        raise BoundExceeded(f"{R.s}^{z} cocycles")
    im = Fraction(R.s ** c0, R.s ** reps.hom_fdim(M, N))
    counts: dict[str, int] = {}
    shapes = [(N.fdim(j), M.fdim(i)) for _, i, j, _ in R.arrow_list]
    for vals in itertools.product(range(R.s), repeat=z):
        h, o = [], 0
        for a, b in shapes:
            h.append(np.array(vals[o:o + a * b], dtype=np.int64).reshape(a, b))
            o += a * b
        cid = clf.classify(extension_module(M, N, h))
        counts[cid] = counts.get(cid, 0) + 1
    return {c: Fraction(k) / im for c, k in sorted(counts.items())}


def epsilon(M: Module, N: Module, E: Module, clf: IsoClassifier) -> int:
    """ε^E_{MN} through F^E_{MN} |Hom(M,N)| |Aut M| |Aut N| / |Aut E|."""
    Fnum = 0
    cm, cn = clf.classify(M), clf.classify(N)
    e = N.dims
    for Us in reps.submodules(E, e):
        if clf.classify(reps.submodule_of(E, Us)) == cn and clf.classify(reps.quotient_of(E, Us)) == cm:
            Fnum += 1
    val = Fraction(Fnum * M.R.q ** reps.hom_dim(M, N) * clf.aut(cm) * clf.aut(cn), clf.aut(clf.classify(E)))
    if val.denominator != 1:
        raise NonIntegerResult(f"ε = {val} is not an integer")
    return int(val)


def epsilon_table(M: Module, N: Module, clf: IsoClassifier) -> dict[str, int]:
    """ε^E_{MN} for every middle term, Riedtmann route, guarded by the ε-sum rule."""
    direct = extension_classes(M, N, clf)
    out = {}
    for cid in direct:
        out[cid] = epsilon(M, N, clf.rep(cid), clf)
    ext = hom_ext_dims(M, N)[1]
    if sum(out.values()) != M.R.q ** ext:
        raise NonIntegerResult(f"ε-sum {sum(out.values())} != q^{ext}")
    return out


# -- Hom strata -------------------------------------------------------------------

def _projective_reps(basis, F):
    """One nonzero element per line of the span of basis (first nonzero coeff 1)."""
    h = len(basis)
    for lead in range(h):
        for rest in itertools.product(range(F.order), repeat=h - lead - 1):
            coeffs = [0] * lead + [1] + list(rest)
            yield coeffs


def hom_strata(M: Module, I: Module, clf: IsoClassifier) -> dict[tuple[str, str], int]:
    """|Hom(M, I)_{B, I'}| by enumerating all f (up to scalars)."""
    if not reps.is_injective(I):
        raise NotInjective(f"{I} is not injective")
    R = M.R
    F = R.F
    basis = reps.hom_basis(M, I)
    out: dict[tuple[str, str], int] = {}
    key0 = (clf.classify(M), clf.classify(I))
    out[key0] = 1
    for coeffs in _projective_reps(basis, F):
        f = tuple(la.combine(F, coeffs, [b[i] for b in basis]) for i in range(R.n))
        key = (clf.classify(reps.kernel(M, f)), clf.classify(reps.cokernel(I, f)))
        out[key] = out.get(key, 0) + (F.order - 1)
    return dict(sorted(out.items()))


def strata_formula(M: Module, I: Module, clf: IsoClassifier) -> dict[tuple[str, str], int]:
    """Σ_A |Aut A| F^M_{AB} F^I_{I'A}."""
    FM, _ = submodule_census(M, clf)
    FI, _ = submodule_census(I, clf)
    out: dict[tuple[str, str], int] = {}
    for (A, B), x in FM.items():
        for (Ip, A2), y in FI.items():
            if A2 == A:
                out[(B, Ip)] = out.get((B, Ip), 0) + clf.aut(A) * x * y
    return dict(sorted(out.items()))


# -- Green's formula -------------------------------------------------------------

@dataclass
class GreenReport:
    lhs: Fraction
    rhs: Fraction

    @property
    def passed(self) -> bool:
        return self.lhs == self.rhs


def _census_of(clf: IsoClassifier, cid: str):
    key = ("census", cid)
    if key not in clf.memo:
        clf.memo[key] = submodule_census(clf.rep(cid), clf)
    return clf.memo[key]


def _eps_of(clf: IsoClassifier, a: str, c: str) -> dict[str, int]:
    key = ("eps", a, c)
    if key not in clf.memo:
        clf.memo[key] = epsilon_table(clf.rep(a), clf.rep(c), clf)
    return clf.memo[key]


def green_check(M: Module, N: Module, X: Module, Y: Module, clf: IsoClassifier) -> GreenReport:
    """Σ_E ε^E_{MN} F^E_{XY} against Σ q^{[M,N]-[A,C]-[B,D]-<A,D>} F^M_{AB} F^N_{CD} ε^X_{AC} ε^Y_{BD}.

    Both sides vanish unless dim M + dim N = dim X + dim Y.
    """
    R = M.R
    q = R.q
    if tuple(a + b for a, b in zip(M.dims, N.dims)) != tuple(a + b for a, b in zip(X.dims, Y.dims)):
        return GreenReport(Fraction(0), Fraction(0))
    cm, cn = clf.classify(M), clf.classify(N)
    cx, cy = clf.classify(X), clf.classify(Y)
    lhs = Fraction(0)
    for E, eps in _eps_of(clf, cm, cn).items():
        lhs += eps * _census_of(clf, E)[0].get((cx, cy), 0)
    FM, _ = _census_of(clf, cm)
    FN, _ = _census_of(clf, cn)
    rhs = Fraction(0)
    hmn = reps.hom_dim(M, N)
    for (A, B), fm in FM.items():
        for (C, D), fn in FN.items():
            ex = _eps_of(clf, A, C).get(cx, 0)
            if not ex:
                continue
            ey = _eps_of(clf, B, D).get(cy, 0)
            if not ey:
                continue
            Am, Bm, Cm, Dm = (clf.rep(z) for z in (A, B, C, D))
            p = hmn - reps.hom_dim(Am, Cm) - reps.hom_dim(Bm, Dm) - reps.euler(Am, Dm)
            rhs += Fraction(q) ** p * fm * fn * ex * ey
    return GreenReport(lhs, rhs)


# -- interpolation -------------------------------------------------------------------

def sample_points(count: int, start=DEFAULT_SAMPLES) -> list[int]:
    """``count`` distinct prime powers, the configured ones first."""
    out = list(dict.fromkeys(int(x) for x in start))
    gen = prime_powers(max(out) + 1 if out else 2)
    while len(out) < count:
        out.append(next(gen))
    return out[:count]


def interpolate(xs, ys, degbound: int) -> list[int]:
    """Integer polynomial of degree ≤ degbound through the points; the
    last point is held out for verification."""
    if len(xs) < degbound + 2:
        raise ValueError("need degbound + 2 samples")
    pts = list(zip(xs, ys))[: degbound + 1]
    # Newton divided differences with exact fractions
    coef = [Fraction(y) for _, y in pts]
    n = len(pts)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (pts[i][0] - pts[i - j][0])
    poly = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        # poly = poly * (x - x_i) + coef[i]
        new = [Fraction(0)] * n
        for k in range(n - 1):
            new[k + 1] += poly[k]
        for k in range(n):
            new[k] -= pts[i][0] * poly[k]
        new[0] += coef[i]
        poly = new
    if any(c.denominator != 1 for c in poly):
        raise NonPolynomial(f"non-integer coefficients {poly}")
    out = [int(c) for c in poly]
    for x, y in list(zip(xs, ys))[degbound + 1:]:
        if sum(c * x ** k for k, c in enumerate(out)) != y:
            raise NonPolynomial(f"held-out sample at {x} disagrees")
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


@dataclass
class CountPolynomial:
    """A counting function interpolated in S = q^g."""

    coeffs: list[int]
    g: int
    samples: dict[int, int]

    def as_qcoeff(self) -> QCoeff:
        return QCoeff.from_poly_in_q(self.coeffs, qexp=2 * self.g)

    def __call__(self, q: int) -> int:
        S = q ** self.g
        return sum(c * S ** k for k, c in enumerate(self.coeffs))


def interpolate_counts(fn, degbound: int, g: int, samples=DEFAULT_SAMPLES) -> CountPolynomial:
    """Evaluate fn(q) at degbound + 2 prime powers and interpolate in S = q^g."""
    qs = sample_points(degbound + 2, samples)
    ys = [fn(q) for q in qs]
    coeffs = interpolate([q ** g for q in qs], ys, degbound)
    return CountPolynomial(coeffs, g, dict(zip(qs, ys)))


def gr_degbound(Q: ValuedQuiverData, m, e) -> int:
    """Degree bound in S = q^g for |Gr_e| of a module of dimension m."""
    g = Q.d_gcd
    return sum(ei * (mi - ei) * d // g for ei, mi, d in zip(e, m, Q.d))


def gr_polynomial(Q: ValuedQuiverData, desc: catalog.Descriptor, e, samples=DEFAULT_SAMPLES) -> CountPolynomial:
    """|Gr_e| of the module described by ``desc`` as a polynomial in q^g."""
    Q = Q.principal()
    m = desc.dims(Q.n)

    def fn(q):
        R = field_ctx(Q, q)
        return reps.gr_count_fast(catalog.realize(R, desc), e)

    return interpolate_counts(fn, gr_degbound(Q, m, e), Q.d_gcd, samples)


# -- Hall tables -------------------------------------------------------------------

@dataclass
class HallTable:
    quiver: str
    q: int
    classes: list[tuple[str, tuple[int, ...], int]]  # id, dims, |Aut|
    hall: dict[str, dict[str, int]]  # "A|B" counts per E
    gr: dict[str, dict[str, int]]

    def to_text(self) -> str:
        lines = [f"# hall table quiver={self.quiver} q={self.q}", "# classes: id dims |Aut|"]
        for cid, dims, aut in self.classes:
            lines.append(f"class {cid} {','.join(map(str, dims))} {aut}")
        lines.append("# hall: E A B F^E_AB")
        for E in sorted(self.hall):
            for key in sorted(self.hall[E]):
                A, B = key.split("|")
                lines.append(f"hall {E} {A} {B} {self.hall[E][key]}")
        lines.append("# gr: E e |Gr_e E|")
        for E in sorted(self.gr):
            for e in sorted(self.gr[E]):
                lines.append(f"gr {E} {e} {self.gr[E][e]}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {"quiver": self.quiver, "q": self.q,
                "classes": [[c, list(d), a] for c, d, a in self.classes],
                "hall": self.hall, "gr": self.gr}

    @classmethod
    def from_json(cls, data) -> HallTable:
        return cls(data["quiver"], data["q"], [(c, tuple(d), a) for c, d, a in data["classes"]],
                   data["hall"], data["gr"])


def cache_key(Q: ValuedQuiverData, q: int, extra: str = "") -> str:
    h = hashlib.sha256((Q.content_key() + f"|q={q}|" + extra).encode()).hexdigest()
    return h[:24]


def build_hall_table(Q: ValuedQuiverData, q: int, dmax, bound: int = 4,
                     cache_dir: str | os.PathLike | None = None) -> HallTable:
    """Iso classes with dimension ≤ dmax, their |Aut|, Hall numbers and Gr counts."""
    Q = Q.principal()
    dmax = tuple(int(x) for x in dmax)
    path = None
    if cache_dir is not None:
        path = Path(cache_dir) / f"hall-{cache_key(Q, q, f'dmax={dmax};bound={bound}')}.json"
        if path.exists():
            return HallTable.from_json(json.loads(path.read_text()))
    clf = classifier(Q, q)
    classes = []
    for dims in itertools.product(*[range(x + 1) for x in dmax]):
        if sum(d * x for d, x in zip(Q.d, dims)) > bound:
            continue
        for cid, M, aut in enumerate_iso_classes(Q, dims, q, bound, clf):
            classes.append((cid, dims, aut))
    hall, gr = {}, {}
    for cid, dims, _ in classes:
        F, g = submodule_census(clf.rep(cid), clf)
        hall[cid] = {f"{a}|{b}": v for (a, b), v in sorted(F.items())}
        gr[cid] = {",".join(map(str, e)): v for e, v in sorted(g.items())}
    table = HallTable(Q.name or "Q", q, classes, hall, gr)
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(table.to_json(), sort_keys=True))
    return table


__all__ = [
    "BoundExceeded", "CountPolynomial", "GreenReport", "HallTable", "IsoClassifier",
    "NonIntegerResult", "NonPolynomial", "NotInjective", "build_hall_table", "classifier",
    "enumerate_iso_classes", "epsilon", "epsilon_table", "extension_classes", "field_ctx",
    "gr_polynomial", "green_check", "hom_ext_dims", "hom_strata", "interpolate",
    "interpolate_counts", "sample_points", "strata_formula", "submodule_census",
]
