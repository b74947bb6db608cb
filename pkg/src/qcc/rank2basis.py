"""Rank-2 apparatus: the order ⪯, the assignment d ↦ X_d and the basis check."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property

from . import catalog, reps
from .catalog import Descriptor
from .ccmap import CharacterEngine, NotInSpan, ObjectDescriptor
from .qring import QCoeff
from .repbrute import DEFAULT_SAMPLES, field_ctx
from .seedkit import rank2_vars
from .speckit import rank2_quiver
from .torus import NotUnique, TorusElement, minimal_elements

LAMBDA2 = [[0, 1], [-1, 0]]


class UnsupportedDimension(ValueError):
    pass


@dataclass(frozen=True)
class ZVector2:
    d1: int
    d2: int

    @property
    def plus(self) -> tuple[int, int]:
        return (max(self.d1, 0), max(self.d2, 0))

    @property
    def minus(self) -> tuple[int, int]:
        return (max(-self.d1, 0), max(-self.d2, 0))

    def __iter__(self):
        return iter((self.d1, self.d2))

    def __str__(self) -> str:
        return f"({self.d1},{self.d2})"


def porder_leq(r, s) -> str:
    """'equal', '≺' (r strictly below s), '≻' or 'incomparable'."""
    r, s = tuple(r), tuple(s)
    if r == s:
        return "equal"
    if all(a <= b for a, b in zip(r, s)):
        return "≺"
    if all(a >= b for a, b in zip(r, s)):
        return "≻"
    return "incomparable"


def is_unit(c: QCoeff) -> bool:
    """A single signed power of q^{1/2}."""
    items = c.terms
    return len(items) == 1 and abs(next(iter(items.values()))) == 1


def _unit_inverse(c: QCoeff) -> QCoeff:
    (k, a), = c.terms.items()
    return QCoeff.v(-k, a)


@dataclass
class BasisElement:
    d: ZVector2
    obj: ObjectDescriptor
    value: TorusElement
    provenance: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"d": list(self.d), "object": self.obj.name, "value": self.value.to_json(),
                "provenance": self.provenance}


class Rank2:
    """Context for the rank-2 quiver with exchange matrix [[0, b], [-c, 0]]."""

    def __init__(self, b: int, c: int, samples=DEFAULT_SAMPLES):
        self.b, self.c = b, c
        self.Q = rank2_quiver(b, c)
        self.eng = CharacterEngine(self.Q, LAMBDA2, samples)
        self.lam = self.eng.lam
        self._xd: dict = {}

    @cached_property
    def finite_type(self) -> bool:
        return self.b * self.c <= 3

    # -- choosing modules -----------------------------------------------------------
    def generic_descriptor(self, dims) -> Descriptor:
        """The rigid module of dimension ``dims`` as a sum of exceptional parts."""
        dims = tuple(dims)
        if not any(dims):
            return catalog.ZERO
        R = field_ctx(self.eng.P, 2)
        try:
            cands = [D for D in catalog.iso_descriptors(self.Q, dims) if D.dims(2) == dims]
        except catalog.DescriptorAmbiguous as exc:
            raise UnsupportedDimension(str(exc)) from None
        rigid = [D for D in cands if reps.ext_dim(catalog.realize(R, D), catalog.realize(R, D)) == 0]
        if len(rigid) != 1:
            raise UnsupportedDimension(f"{len(rigid)} rigid candidates of dimension {dims}")
        return rigid[0]

    def split_descriptor(self, dims) -> Descriptor:
        parts = []
        for i, k in enumerate(dims):
            e = tuple(1 if j == i else 0 for j in range(2))
            parts += [catalog.root_part(e)] * k
        return Descriptor(tuple(sorted(parts, key=catalog._part_key)))

    def choose(self, d: ZVector2, policy="generic") -> ObjectDescriptor:
        if isinstance(policy, dict):
            desc = policy.get(tuple(d))
            if desc is None:
                raise UnsupportedDimension(f"no user module for {d}")
        elif policy == "generic":
            desc = self.generic_descriptor(d.plus)
        elif policy == "split-semisimple":
            desc = self.split_descriptor(d.plus)
        else:
            raise ValueError(f"unknown policy {policy!r}")
        return ObjectDescriptor(desc, d.minus)

    # -- characters -------------------------------------------------------------------
    def _product_character(self, desc: Descriptor) -> tuple[TorusElement, list[str]]:
        """X of a direct sum built up one part at a time; each step uses
        X_A X_P = q^{1/2 Λ(g_A, g_P)} X_{A ⊕ P}, valid when Ext^1(A, P) = 0."""
        R = field_ctx(self.eng.P, 2)
        todo = list(desc.parts)
        acc = catalog.ZERO
        val = TorusElement.one(self.lam)
        order = []
        while todo:
            A = catalog.realize(R, acc)
            for k, p in enumerate(todo):
                if reps.ext_dim(A, catalog.realize_part(R, p)) == 0:
                    break
            else:
                raise UnsupportedDimension(f"no Ext-free ordering for {desc.name}")
            p = todo.pop(k)
            single = catalog.single(p)
            xp = self.eng.cc_module(single).value
            ga = self.eng.g_vector(acc.dims(2))
            gp = self.eng.g_vector(p.dims)
            val = (val * xp).scale(QCoeff.v(-self.lam(ga, gp)))
            acc = acc + single
            order.append(p.name)
        return val, order

    def character(self, obj: ObjectDescriptor) -> tuple[TorusElement, dict]:
        parts = obj.module.parts
        if any(obj.inj) or len(parts) <= 1 or all(p.dims == parts[0].dims and sum(p.dims) == 1 for p in parts):
            return self.eng.cc_object(obj).value, {"route": "grassmannian counts"}
        val, order = self._product_character(obj.module)
        return val, {"route": "product of summands", "order": order}

    def make_xd(self, d, policy="generic") -> BasisElement:
        d = d if isinstance(d, ZVector2) else ZVector2(*d)
        key = (d, policy if isinstance(policy, str) else id(policy))
        if key not in self._xd:
            obj = self.choose(d, policy)
            val, prov = self.character(obj)
            self._xd[key] = BasisElement(d, obj, val, prov)
        return self._xd[key]

    # -- standard monomials ---------------------------------------------------------------
    def standard(self, d) -> TorusElement:
        """X_1^{d⁻_1} X_2^{d⁻_2} X_{S_1}^{d⁺_1} X_{S_2}^{d⁺_2}."""
        d = d if isinstance(d, ZVector2) else ZVector2(*d)
        x1 = self.eng.cc_shift((1, 0)).value
        x2 = self.eng.cc_shift((0, 1)).value
        s1 = self.eng.cc_module(catalog.single(catalog.root_part((1, 0)))).value
        s2 = self.eng.cc_module(catalog.single(catalog.root_part((0, 1)))).value
        (a1, a2), (c1, c2) = d.minus, d.plus
        return x1 ** a1 * x2 ** a2 * s1 ** c1 * s2 ** c2

    def expand_standard(self, elem: TorusElement, bound: int = 12, max_steps: int = 400):
        """Peel off ⪯-minimal exponents with standard monomials; returns [(d, coeff)]."""
        out = []
        rest = elem
        for _ in range(max_steps):
            if rest.is_zero():
                return out
            mu = minimal_elements(rest.exponents())[0]
            d = ZVector2(-mu[0], -mu[1])
            if max(abs(d.d1), abs(d.d2)) > bound:
                raise NotInSpan(f"exponent {mu} outside the bound")
            std = self.standard(d)
            lead = std.coeff(mu)
            if not is_unit(lead):
                raise NotInSpan(f"standard monomial {d} has non-unit lead {lead}")
            coeff = rest.coeff(mu) * _unit_inverse(lead)
            out.append((d, coeff))
            rest = rest - std.scale(coeff)
        raise NotInSpan("elimination did not terminate")


# -- basis check ---------------------------------------------------------------------------

@dataclass
class BasisReport:
    b: int
    c: int
    radius: int
    records: list = field(default_factory=list)
    distinct_minima: bool = True
    min_equals_neg_d: bool = True
    min_equals_d: bool = True
    triangular: bool = True
    cluster_in_span: bool = True
    cluster_details: list = field(default_factory=list)
    errors: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.distinct_minima and self.triangular and self.cluster_in_span and not self.errors

    def to_json(self) -> dict:
        return {"b": self.b, "c": self.c, "radius": self.radius, "passed": self.passed,
                "distinct_minima": self.distinct_minima, "min_equals_d": self.min_equals_d,
                "min_equals_neg_d": self.min_equals_neg_d, "triangular": self.triangular,
                "cluster_in_span": self.cluster_in_span, "cluster": self.cluster_details,
                "errors": self.errors, "records": self.records}


def _box(r: int):
    return [ZVector2(a, b) for a, b in itertools.product(range(-r, r + 1), repeat=2)]


def basis_check(b: int, c: int, radius: int, policy="generic", samples=DEFAULT_SAMPLES) -> BasisReport:
    ctx = Rank2(b, c, samples)
    rep = BasisReport(b, c, radius)
    minima: dict = {}
    by_min: dict = {}
    for d in _box(radius):
        try:
            x = ctx.make_xd(d, policy)
        except UnsupportedDimension as exc:
            rep.errors.append({"d": list(d), "error": str(exc)})
            continue
        try:
            mu = x.value.min_exponent()
        except NotUnique as exc:
            rep.errors.append({"d": list(d), "error": f"minimal exponent tie {exc}"})
            continue
        minima[d] = mu
        by_min.setdefault(mu, []).append(d)
        rec = {"d": list(d), "object": x.obj.name, "min_exponent": list(mu),
               "route": x.provenance.get("route")}
        if mu != (-d.d1, -d.d2):
            rep.min_equals_neg_d = False
        if mu != (d.d1, d.d2):
            rep.min_equals_d = False
        try:
            exp = ctx.expand_standard(x.value, bound=max(12, 4 * radius))
            lead_d, lead_c = exp[0]
            rec["leading"] = {"d": list(lead_d), "coeff": lead_c.to_json()}
            rec["expansion"] = [[list(k), v.to_json()] for k, v in exp]
            ok = is_unit(lead_c) and all(
                porder_leq((-lead_d.d1, -lead_d.d2), (-k.d1, -k.d2)) == "≺" for k, _ in exp[1:])
            rec["triangular"] = ok
            rep.triangular &= ok
        except NotInSpan as exc:
            rec["triangular"] = False
            rec["error"] = str(exc)
            rep.triangular = False
        rep.records.append(rec)
    rep.distinct_minima = all(len(v) == 1 for v in by_min.values()) and len(minima) > 0
    # cluster variables: one full period plus overlap
    period = {1: 5, 2: 6, 3: 8}.get(b * c, 10)
    for m, xm in sorted(rank2_vars(b, c, 1 - period, period + 2).items()):
        try:
            mu = xm.min_exponent()
        except NotUnique:
            rep.cluster_in_span = False
            rep.cluster_details.append({"m": m, "in_span": False, "reason": "tie"})
            continue
        if max(abs(mu[0]), abs(mu[1])) > radius:
            continue
        rest = xm
        terms = []
        ok = True
        for _ in range(50):
            if rest.is_zero():
                break
            nu = minimal_elements(rest.exponents())[0]
            ds = by_min.get(nu)
            if not ds:
                ok = False
                break
            x = ctx.make_xd(ds[0], policy).value
            lead = x.coeff(nu)
            if not is_unit(lead):
                ok = False
                break
            k = rest.coeff(nu) * _unit_inverse(lead)
            terms.append([list(ds[0]), k.to_json()])
            rest = rest - x.scale(k)
        ok = ok and rest.is_zero()
        rep.cluster_in_span &= ok
        rep.cluster_details.append({"m": m, "in_span": ok, "terms": terms})
    return rep
