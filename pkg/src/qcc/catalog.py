"""Iso-class descriptors that make sense at every q.

A descriptor is a direct sum of parts.  A part is either

* ``root`` - the unique rigid (exceptional) indecomposable with a given
  dimension vector, found by a seeded random search at each q;
* ``int`` - explicit integer matrices read in the prime field (used for the
  regular Kronecker modules at the rational points 0, 1, ∞);
* ``inj`` - the indecomposable injective I_v.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from functools import lru_cache

import numpy as np

from . import reps
from .reps import Module, Realization
from .speckit import ValuedQuiverData, euler_form


class DescriptorAmbiguous(ValueError):
    pass


@dataclass(frozen=True)
class Part:
    kind: str  # "root" | "int" | "inj"
    dims: tuple[int, ...]
    name: str
    maps: tuple = dc_field(default=(), compare=False, repr=False)
    vertex: int = 0


@dataclass(frozen=True)
class Descriptor:
    parts: tuple[Part, ...]

    @property
    def name(self) -> str:
        if not self.parts:
            return "0"
        counts: dict[str, int] = {}
        for p in self.parts:
            counts[p.name] = counts.get(p.name, 0) + 1
        return "+".join(n if k == 1 else f"{k}{n}" for n, k in counts.items())

    def dims(self, n: int) -> tuple[int, ...]:
        out = [0] * n
        for p in self.parts:
            for i, x in enumerate(p.dims):
                out[i] += x
        return tuple(out)

    def __add__(self, other: Descriptor) -> Descriptor:
        return Descriptor(tuple(sorted(self.parts + other.parts, key=_part_key)))

    def __repr__(self) -> str:
        return f"<{self.name}>"

    def to_json(self):
        return [p.name for p in self.parts]


ZERO = Descriptor(())


def _part_key(p: Part):
    return (p.dims, p.kind, p.name)


def single(p: Part) -> Descriptor:
    return Descriptor((p,))


def _name_dims(prefix: str, dims) -> str:
    return prefix + "".join(str(x) for x in dims)


def root_part(dims) -> Part:
    dims = tuple(int(x) for x in dims)
    if sum(dims) == 1:
        return Part("root", dims, f"S{dims.index(1) + 1}")
    return Part("root", dims, _name_dims("E", dims))


def inj_part(R_or_Q, v: int) -> Part:
    Q = R_or_Q.Q if isinstance(R_or_Q, Realization) else R_or_Q
    dims = reps.injective_dims(Realization(Q, 2), v)
    return Part("inj", dims, f"I{v}", vertex=v)


# -- realization ----------------------------------------------------------------

@lru_cache(maxsize=None)
def generic_rigid(R: Realization, dims: tuple[int, ...]) -> Module:
    """The rigid module of the given dimension vector (seeded random search)."""
    rng = np.random.default_rng(hash((dims, R.q)) & 0xFFFFFFFF)
    F = R.F
    if not any(dims):
        return reps.zero_module(R)
    for _ in range(2000):
        maps = [rng.integers(0, F.order, (R.vdim(j, dims[j]), R.vdim(i, dims[i])))
                for _, i, j, _ in R.arrow_list]
        M = reps.make_module(R, dims, maps)
        if reps.ext_dim(M, M) == 0:
            return M
    raise DescriptorAmbiguous(f"no rigid module of dimension {dims} found at q={R.q}")


@lru_cache(maxsize=None)
def realize_part(R: Realization, p: Part) -> Module:
    if p.kind == "root":
        M = generic_rigid(R, p.dims)
        if reps.hom_fdim(M, M) * R.g != euler_form(R.Q, p.dims, p.dims):
            raise DescriptorAmbiguous(f"{p.name}: generic module is not exceptional")
        return M
    if p.kind == "int":
        return reps.from_integer_maps(R, p.dims, [np.array(A) for A in p.maps])
    if p.kind == "inj":
        mult = [0] * R.n
        mult[p.vertex - 1] = 1
        return reps.injective_module(R, mult)
    raise ValueError(f"unknown part kind {p.kind}")


_REAL_CACHE: dict = {}


def realize(R: Realization, desc: Descriptor) -> Module:
    key = (id(R), desc)
    if key not in _REAL_CACHE:
        mods = [realize_part(R, p) for p in desc.parts]
        _REAL_CACHE[key] = (R, reps.direct_sum(*mods) if mods else reps.zero_module(R))
    return _REAL_CACHE[key][1]


@lru_cache(maxsize=None)
def realization(Q: ValuedQuiverData, q: int) -> Realization:
    return Realization(Q, q)


# -- indecomposables per quiver ------------------------------------------------------

def _kronecker_regulars(Q: ValuedQuiverData) -> list[Part]:
    """R_0, R_1, R_inf and their length-2 self-extensions (maps for the two arrow entries)."""
    out = []
    pts = {"0": (1, 0), "1": (1, 1), "inf": (0, 1)}
    for nm, (a, b) in pts.items():
        out.append(Part("int", (1, 1), f"R{nm}", maps=(((a,),), ((b,),))))
    J = ((0, 1), (0, 0))
    I = ((1, 0), (0, 1))
    out.append(Part("int", (2, 2), "R0[2]", maps=(I, J)))
    out.append(Part("int", (2, 2), "R1[2]", maps=(I, ((1, 1), (0, 1)))))
    out.append(Part("int", (2, 2), "Rinf[2]", maps=(J, I)))
    return out


def is_kronecker_type(Q: ValuedQuiverData) -> bool:
    R = realization(Q, 2)
    return R.n == 2 and len(R.arrow_list) == 2 and R.delta == (1, 1) and \
        all(i == 0 and j == 1 for _, i, j, _ in R.arrow_list)


def is_finite_type(Q: ValuedQuiverData) -> bool:
    """Dynkin test through positive definiteness of the symmetrized Euler form."""
    E = Q.principal().euler_matrix
    S = E + E.T
    return bool(np.all(np.linalg.eigvalsh(S.astype(float)) > 1e-9))


def _within(dims, bound) -> bool:
    return all(a <= b for a, b in zip(dims, bound))


@lru_cache(maxsize=None)
def indecomposables(Q: ValuedQuiverData, bound: tuple[int, ...]) -> tuple[Part, ...]:
    """Indecomposable parts with dimension vector ≤ bound."""
    Q = Q.principal()
    out: list[Part] = []
    R = realization(Q, 2)
    for dims in itertools.product(*[range(b + 1) for b in bound]):
        if not any(dims):
            continue
        if not is_real_root(Q, dims):
            continue
        # real Schur roots: the generic module is exceptional
        try:
            M = generic_rigid(R, dims)
        except DescriptorAmbiguous:
            continue
        if reps.hom_fdim(M, M) * R.g == euler_form(Q, dims, dims) and is_real_root(Q, dims):
            out.append(root_part(dims))
    if is_kronecker_type(Q):
        out.extend(p for p in _kronecker_regulars(Q) if _within(p.dims, bound))
    elif not is_finite_type(Q):
        raise DescriptorAmbiguous(f"no descriptor table for {Q.name or 'this quiver'}")
    return tuple(sorted(out, key=_part_key))


def is_real_root(Q: ValuedQuiverData, dims) -> bool:
    """Positive real root test: reflect down to a simple root."""
    Q = Q.principal()
    E = Q.euler_matrix
    S = E + E.T
    x = np.array(dims, dtype=np.int64)
    if np.any(x < 0) or not np.any(x):
        return False
    for _ in range(1000):
        if int(x.sum()) == 1:
            return True
        for i in range(Q.n):
            c = int(S[i] @ x)
            if c > 0 and x[i] > 0:
                # r_i(x) = x - (2 (x, e_i) / (e_i, e_i)) e_i with (e_i, e_i) = 2 d_i
                step, rem = divmod(c, Q.d[i])
                if rem:
                    return False
                x = x.copy()
                x[i] -= step
                break
        else:
            return False
        if np.any(x < 0):
            return False
    return False


def iso_descriptors(Q: ValuedQuiverData, bound) -> list[Descriptor]:
    """All direct sums of catalog indecomposables with dimension ≤ bound."""
    bound = tuple(int(x) for x in bound)
    parts = indecomposables(Q, bound)
    n = Q.principal().n
    out: list[Descriptor] = []

    def rec(k, chosen, dims):
        if k == len(parts):
            out.append(Descriptor(tuple(chosen)))
            return
        p = parts[k]
        mult = 0
        cur = list(dims)
        while True:
            rec(k + 1, chosen + [p] * mult, cur)
            cur = [a + b for a, b in zip(cur, p.dims)]
            if not _within(cur, bound):
                break
            mult += 1

    rec(0, [], [0] * n)
    out.sort(key=lambda D: (D.dims(n), D.name))
    return out


def injective_descriptors(Q: ValuedQuiverData) -> list[Descriptor]:
    n = Q.principal().n
    return [single(inj_part(Q, v)) for v in range(1, n + 1)]


def descriptor_by_name(Q: ValuedQuiverData, name: str, bound=(3, 3)) -> Descriptor:
    """Parse names such as 'S1+E11', '2S1', 'I2', '0'."""
    if name in ("0", ""):
        return ZERO
    n = Q.principal().n
    table = {p.name: p for p in indecomposables(Q, tuple(bound[:n]) if len(bound) >= n else (3,) * n)}
    for v in range(1, n + 1):
        table[f"I{v}"] = inj_part(Q, v)
    parts: list[Part] = []
    for tok in name.split("+"):
        tok = tok.strip()
        k = 0
        while tok and tok[0].isdigit() and tok[:2] != "0":
            k = 10 * k + int(tok[0])
            tok = tok[1:]
        k = k or 1
        if tok not in table:
            raise ValueError(f"unknown indecomposable {tok!r}; known: {sorted(table)}")
        parts.extend([table[tok]] * k)
    return Descriptor(tuple(sorted(parts, key=_part_key)))
