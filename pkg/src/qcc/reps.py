"""Explicit representations of a k-species over a finite field k = F_q.

Let g = gcd(d_i).  Everything is written over the field F_s, s = q^g.  Vertex i
carries F_i = F_{s^{δ_i}} with δ_i = d_i / g, and a module with dimension vector n
stores V_i = F_s^{δ_i n_i} where the F_i-structure is the standard block
matrix T_i = I ⊗ C_i (C_i = multiplication by the adjoined root).  A valued arrow
i -> j with d_i a_ij = c contributes c / max(d_i, d_j) arbitrary F_s-linear maps
V_i -> V_j; this is the species when min(δ_i, δ_j) = 1, which covers every
valued rank-2 quiver and every equally valued quiver.

k-dimensions are g times F_s-dimensions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import linalg as la
from .fields import GF, extension, field, factor_prime_power
from .kernels import count_units
from .speckit import ValuedQuiverData


class UnsupportedSpecies(ValueError):
    pass


class NotInjective(ValueError):
    pass


class BoundExceeded(RuntimeError):
    pass


# enumeration caps for unit searches (number of F_s-combinations)
ENUM_CAP = 5_000_000


class Realization:
    """A species of type Q over F_q, realized over F_s with s = q^g."""

    def __init__(self, Q: ValuedQuiverData, q: int):
        factor_prime_power(q)
        self.Q = Q.principal()
        self.q = q
        self.g = Q.d_gcd
        self.s = q ** self.g
        self.F: GF = field(self.s)
        self.n = self.Q.n
        self.delta = tuple(x // self.g for x in self.Q.d)
        self.copies = []
        for a in self.Q.arrows:
            di, dj = self.Q.d[a.source - 1], self.Q.d[a.target - 1]
            if min(self.delta[a.source - 1], self.delta[a.target - 1]) != 1:
                raise UnsupportedSpecies("both ends of an arrow carry proper extensions")
            c = di * a.a_st
            self.copies.append(c // max(di, dj))
        self.C = []
        for dl in self.delta:
            if dl == 1:
                self.C.append(np.ones((1, 1), dtype=np.int64))
            else:
                self.C.append(extension(self.F, dl).mul_matrix_of_root())

    def __repr__(self) -> str:
        return f"Realization({self.Q.name or 'Q'}, q={self.q}, s={self.s})"

    @property
    def arrow_list(self):
        """(arrow index, source, target, copy) with 0-based vertices."""
        out = []
        for ai, a in enumerate(self.Q.arrows):
            for c in range(self.copies[ai]):
                out.append((ai, a.source - 1, a.target - 1, c))
        return out

    def vdim(self, i: int, ni: int) -> int:
        return self.delta[i] * ni

    def T(self, i: int, ni: int) -> np.ndarray:
        if self.delta[i] == 1:
            return np.eye(ni, dtype=np.int64)
        return la.kron(self.F, np.eye(ni, dtype=np.int64), self.C[i])

    def field_vector(self, i: int, coords) -> np.ndarray:
        """F_s-coordinates of a vector of F_i-coordinates (F_i encoded as ints)."""
        if self.delta[i] == 1:
            return np.asarray(coords, dtype=np.int64)
        L = extension(self.F, self.delta[i])
        return np.concatenate([np.array(L.digits(int(x)), dtype=np.int64) for x in coords])

    def big_field(self, i: int) -> GF:
        return extension(self.F, self.delta[i]) if self.delta[i] > 1 else self.F


@dataclass(frozen=True, eq=False)
class Module:
    R: Realization
    dims: tuple[int, ...]
    maps: tuple[np.ndarray, ...]  # one F_s-matrix per entry of R.arrow_list

    def __post_init__(self):
        for (ai, i, j, c), A in zip(self.R.arrow_list, self.maps):
            if A.shape != (self.fdim(j), self.fdim(i)):
                raise ValueError(f"map for arrow {ai} has shape {A.shape}")

    def fdim(self, i: int) -> int:
        return self.R.vdim(i, self.dims[i])

    @property
    def fdims(self) -> tuple[int, ...]:
        return tuple(self.fdim(i) for i in range(self.R.n))

    @property
    def kdims(self) -> tuple[int, ...]:
        return tuple(self.R.Q.d[i] * self.dims[i] for i in range(self.R.n))

    def T(self, i: int) -> np.ndarray:
        return self.R.T(i, self.dims[i])

    @property
    def is_zero(self) -> bool:
        return not any(self.dims)

    @cached_property
    def key(self) -> tuple:
        return (self.dims, tuple(A.tobytes() for A in self.maps))

    def __eq__(self, other) -> bool:
        return isinstance(other, Module) and self.R is other.R and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        return f"Module(dims={self.dims})"

    def to_json(self) -> dict:
        return {"q": self.R.q, "dims": list(self.dims), "maps": [A.tolist() for A in self.maps]}


# -- constructors -----------------------------------------------------------

def make_module(R: Realization, dims, maps) -> Module:
    dims = tuple(int(x) for x in dims)
    out = []
    for (ai, i, j, c), A in zip(R.arrow_list, maps):
        A = np.asarray(A, dtype=np.int64).reshape(R.vdim(j, dims[j]), R.vdim(i, dims[i]))
        out.append(A % R.F.order if R.F.is_prime else A)
    return Module(R, dims, tuple(out))


def from_integer_maps(R: Realization, dims, maps) -> Module:
    """Interpret integer matrices in the prime subfield of F_s."""
    p = R.F.p
    return make_module(R, dims, [np.asarray(A, dtype=np.int64) % p for A in maps])


def zero_module(R: Realization) -> Module:
    return make_module(R, (0,) * R.n, [np.zeros((0, 0))] * len(R.arrow_list))


def simple(R: Realization, i: int) -> Module:
    """Simple module S_i (i is 1-based)."""
    dims = [0] * R.n
    dims[i - 1] = 1
    return make_module(R, dims, [np.zeros((R.vdim(b, dims[b]), R.vdim(a, dims[a])))
                                 for _, a, b, _ in R.arrow_list])


def direct_sum(*mods: Module) -> Module:
    if not mods:
        raise ValueError("direct_sum needs at least one module")
    R = mods[0].R
    dims = tuple(sum(M.dims[i] for M in mods) for i in range(R.n))
    maps = []
    for t, (ai, i, j, c) in enumerate(R.arrow_list):
        A = np.zeros((R.vdim(j, dims[j]), R.vdim(i, dims[i])), dtype=np.int64)
        r0 = c0 = 0
        for M in mods:
            B = M.maps[t]
            A[r0:r0 + B.shape[0], c0:c0 + B.shape[1]] = B
            r0 += B.shape[0]
            c0 += B.shape[1]
        maps.append(A)
    return Module(R, dims, tuple(maps))


def power(M: Module, k: int) -> Module:
    return direct_sum(*([M] * k)) if k else zero_module(M.R)


# -- normalization of the F_i-structure ---------------------------------------

def _standard_basis_change(R: Realization, i: int, Tp: np.ndarray) -> np.ndarray:
    """Columns B with B^-1 Tp B = standard block T (greedy w, Tw, ... basis)."""
    F = R.F
    N = Tp.shape[0]
    dl = R.delta[i]
    if dl == 1:
        return np.eye(N, dtype=np.int64)
    cols: list[np.ndarray] = []
    for k in range(N):
        w = np.zeros(N, dtype=np.int64)
        w[k] = 1
        if cols and la.in_span(F, np.array(cols), w):
            continue
        v = w
        for _ in range(dl):
            cols.append(v)
            v = la.matmul(F, Tp, v.reshape(-1, 1)).reshape(-1)
        if len(cols) == N:
            break
    return np.array(cols, dtype=np.int64).T


def module_from_structure(R: Realization, fdims, Ts, maps) -> Module:
    """Module from F_s-data with arbitrary F_i-structures Ts; normalizes Ts."""
    F = R.F
    Bs = [_standard_basis_change(R, i, Ts[i]) if fdims[i] else np.zeros((0, 0), dtype=np.int64)
          for i in range(R.n)]
    invs = [la.inverse(F, B) if B.size else B for B in Bs]
    dims = tuple(fdims[i] // R.delta[i] for i in range(R.n))
    out = []
    for (ai, i, j, c), A in zip(R.arrow_list, maps):
        if A.size:
            A = la.matmul(F, la.matmul(F, invs[j], A), Bs[i])
        out.append(np.asarray(A, dtype=np.int64).reshape(fdims[j], fdims[i]))
    return Module(R, dims, tuple(out))


# -- Hom ----------------------------------------------------------------------

def hom_basis(M: Module, N: Module) -> list[tuple[np.ndarray, ...]]:
    """F_s-basis of Hom(M, N); each element is a tuple of vertex matrices."""
    R = M.R
    F = R.F
    shapes = [(N.fdim(i), M.fdim(i)) for i in range(R.n)]
    offs = np.cumsum([0] + [a * b for a, b in shapes])
    nvar = int(offs[-1])
    if nvar == 0:
        return []
    rows = []
    for i in range(R.n):
        a, b = shapes[i]
        if a * b == 0 or R.delta[i] == 1:
            continue
        blk = np.zeros((a * b, nvar), dtype=np.int64)
        blk[:, offs[i]:offs[i + 1]] = la.sub(F, la.kron(F, np.eye(a, dtype=np.int64), M.T(i).T),
                                             la.kron(F, N.T(i), np.eye(b, dtype=np.int64)))
        rows.append(blk)
    for t, (ai, i, j, c) in enumerate(R.arrow_list):
        phi, psi = M.maps[t], N.maps[t]
        ai_, bi_ = shapes[i]
        aj, bj = shapes[j]
        if aj * bi_ == 0:
            continue
        blk = np.zeros((aj * bi_, nvar), dtype=np.int64)
        if aj * bj:
            blk[:, offs[j]:offs[j + 1]] = la.kron(F, np.eye(aj, dtype=np.int64), phi.T)
        if ai_ * bi_:
            blk[:, offs[i]:offs[i + 1]] = la.neg(F, la.kron(F, psi, np.eye(bi_, dtype=np.int64)))
        rows.append(blk)
    A = np.vstack(rows) if rows else np.zeros((0, nvar), dtype=np.int64)
    ns = la.nullspace(F, A, nvar)
    out = []
    for v in ns:
        out.append(tuple(v[offs[i]:offs[i + 1]].reshape(shapes[i]) for i in range(R.n)))
    return out


def hom_fdim(M: Module, N: Module) -> int:
    return len(hom_basis(M, N))


def hom_dim(M: Module, N: Module) -> int:
    """dim_k Hom(M, N)."""
    return M.R.g * hom_fdim(M, N)


def euler(M: Module, N: Module) -> int:
    Q = M.R.Q
    return int(np.asarray(M.dims) @ Q.euler_matrix @ np.asarray(N.dims))


def ext_dim(M: Module, N: Module) -> int:
    """dim_k Ext^1(M, N) (hereditary)."""
    return hom_dim(M, N) - euler(M, N)


def hom_elements(M: Module, N: Module, basis=None):
    """Iterate over all homomorphisms M -> N."""
    basis = hom_basis(M, N) if basis is None else basis
    F = M.R.F
    zero = tuple(np.zeros((N.fdim(i), M.fdim(i)), dtype=np.int64) for i in range(M.R.n))
    for coeffs in itertools.product(range(F.order), repeat=len(basis)):
        f = zero
        for c, b in zip(coeffs, basis):
            if c:
                f = tuple(la.add(F, x, la.scale(F, c, y)) for x, y in zip(f, b))
        yield f


def _block_diag_basis(basis) -> np.ndarray:
    mats = []
    for f in basis:
        K = sum(x.shape[0] for x in f)
        B = np.zeros((K, K), dtype=np.int64)
        o = 0
        for x in f:
            B[o:o + x.shape[0], o:o + x.shape[1]] = x
            o += x.shape[0]
        mats.append(B)
    return np.array(mats, dtype=np.int64)


def _is_unit(F, f) -> bool:
    return all(x.shape[0] == x.shape[1] and la.rank(F, x) == x.shape[0] for x in f if x.size)


def aut_count(M: Module) -> int:
    """|Aut(M)| by enumeration of End(M)."""
    R = M.R
    if M.is_zero:
        return 1
    if not any(np.any(A) for A in M.maps):
        # semisimple: a product of general linear groups
        out = 1
        for i, n in enumerate(M.dims):
            S = R.s ** R.delta[i]
            for t in range(n):
                out *= S ** n - S ** t
        return out
    basis = hom_basis(M, M)
    if R.F.order ** len(basis) > ENUM_CAP:
        raise BoundExceeded(f"End of {M} has {R.F.order}^{len(basis)} elements")
    return int(count_units(_block_diag_basis(basis), *R.F.tables(), R.F.order))


def find_iso(M: Module, N: Module, rng=None, tries: int = 64):
    """An isomorphism M -> N or None."""
    R = M.R
    F = R.F
    if M.dims != N.dims:
        return None
    if M.is_zero:
        return tuple(np.zeros((0, 0), dtype=np.int64) for _ in range(R.n))
    basis = hom_basis(M, N)
    if hom_fdim(M, M) != len(basis) or hom_fdim(N, N) != len(basis) or hom_fdim(N, M) != len(basis):
        return None
    rng = np.random.default_rng(0) if rng is None else rng
    for _ in range(tries):
        coeffs = rng.integers(0, F.order, len(basis))
        f = tuple(la.combine(F, coeffs, [b[i] for b in basis]) for i in range(R.n))
        if _is_unit(F, f):
            return f
    if F.order ** len(basis) > 50 * ENUM_CAP:
        return None
    for f in hom_elements(M, N, basis):
        if _is_unit(F, f):
            return f
    return None


def is_isomorphic(M: Module, N: Module) -> bool:
    return find_iso(M, N) is not None


# -- submodules, quotients, kernels ------------------------------------------

def invariant_subspaces(R: Realization, i: int, ni: int, ei: int):
    """F_i-subspaces of dimension ei in V_i, as F_s-row bases (RREF)."""
    F = R.F
    dl = R.delta[i]
    if dl == 1:
        yield from la.subspaces(F, ni, ei)
        return
    if ei == 0:
        yield np.zeros((0, dl * ni), dtype=np.int64)
        return
    L = R.big_field(i)
    for U in la.subspaces(L, ni, ei):
        rows = []
        for w in U:
            x = [int(v) for v in w]
            for _ in range(dl):
                rows.append(R.field_vector(i, x))
                x = [int(L.mul_t[L.base.order, v]) for v in x]
        yield la.row_space(F, np.array(rows, dtype=np.int64).reshape(-1, dl * ni))


def is_submodule(M: Module, Us) -> bool:
    F = M.R.F
    for t, (ai, i, j, c) in enumerate(M.R.arrow_list):
        if not la.maps_into(F, Us[i], M.maps[t], Us[j]):
            return False
    return True


def submodules(M: Module, e):
    """All submodules of dimension vector e, as tuples of row bases."""
    R = M.R
    e = tuple(int(x) for x in e)
    if any(not 0 <= e[i] <= M.dims[i] for i in range(R.n)):
        return
    # fix vertices in an order that lets arrows be checked early
    order = list(range(R.n))
    lists = [list(invariant_subspaces(R, i, M.dims[i], e[i])) for i in order]
    arrows = R.arrow_list
    F = R.F

    def rec(k, chosen):
        if k == R.n:
            yield tuple(chosen)
            return
        for U in lists[k]:
            chosen[k] = U
            ok = True
            for t, (ai, i, j, c) in enumerate(arrows):
                if max(i, j) == k and not la.maps_into(F, chosen[i], M.maps[t], chosen[j]):
                    ok = False
                    break
            if ok:
                yield from rec(k + 1, chosen)
        chosen[k] = None

    yield from rec(0, [None] * R.n)


def gr_count(M: Module, e) -> int:
    return sum(1 for _ in submodules(M, e))


def _pivots(U) -> list[int]:
    out = []
    for row in U:
        nz = np.nonzero(row)[0]
        out.append(int(nz[0]))
    return out


def submodule_of(M: Module, Us) -> Module:
    """The submodule spanned by the RREF row bases Us."""
    R = M.R
    F = R.F
    Ts, maps = [], []
    pivs = [_pivots(U) for U in Us]
    for i in range(R.n):
        U = Us[i]
        if U.shape[0]:
            Ts.append(la.matmul(F, M.T(i), U.T)[pivs[i], :])
        else:
            Ts.append(np.zeros((0, 0), dtype=np.int64))
    for t, (ai, i, j, c) in enumerate(R.arrow_list):
        if Us[i].shape[0] and Us[j].shape[0]:
            maps.append(la.matmul(F, M.maps[t], Us[i].T)[pivs[j], :])
        else:
            maps.append(np.zeros((Us[j].shape[0], Us[i].shape[0]), dtype=np.int64))
    return module_from_structure(R, [U.shape[0] for U in Us], Ts, maps)


def quotient_of(M: Module, Us) -> Module:
    """M / U for the submodule with row bases Us."""
    R = M.R
    F = R.F
    projs, comps = [], []
    for i in range(R.n):
        N = M.fdim(i)
        U = np.asarray(Us[i], dtype=np.int64)
        U = U.reshape(U.shape[0] if U.ndim == 2 else 0, N)
        C = la.complement_basis(F, U, N)
        full = np.vstack([U, C]).T  # columns: U then C
        inv = la.inverse(F, full) if N else np.zeros((0, 0), dtype=np.int64)
        projs.append(inv[U.shape[0]:, :])
        comps.append(C)
    Ts, maps = [], []
    for i in range(R.n):
        C = comps[i]
        Ts.append(la.matmul(F, projs[i], la.matmul(F, M.T(i), C.T)) if C.shape[0]
                  else np.zeros((0, 0), dtype=np.int64))
    for t, (ai, i, j, c) in enumerate(R.arrow_list):
        Ci, Pj = comps[i], projs[j]
        if Ci.shape[0] and Pj.shape[0]:
            maps.append(la.matmul(F, Pj, la.matmul(F, M.maps[t], Ci.T)))
        else:
            maps.append(np.zeros((Pj.shape[0], Ci.shape[0]), dtype=np.int64))
    return module_from_structure(R, [C.shape[0] for C in comps], Ts, maps)


def kernel_spaces(M: Module, f) -> tuple[np.ndarray, ...]:
    F = M.R.F
    out = []
    for i in range(M.R.n):
        if f[i].size == 0:
            out.append(np.eye(M.fdim(i), dtype=np.int64))
        else:
            out.append(la.row_space(F, la.nullspace(F, f[i], M.fdim(i))))
    return tuple(out)


def image_spaces(N: Module, f) -> tuple[np.ndarray, ...]:
    F = N.R.F
    out = []
    for i in range(N.R.n):
        if f[i].size == 0:
            out.append(np.zeros((0, N.fdim(i)), dtype=np.int64))
        else:
            out.append(la.row_space(F, f[i].T))
    return tuple(out)


def kernel(M: Module, f) -> Module:
    return submodule_of(M, kernel_spaces(M, f))


def cokernel(N: Module, f) -> Module:
    return quotient_of(N, image_spaces(N, f))


def image(N: Module, f) -> Module:
    return submodule_of(N, image_spaces(N, f))


# -- socle and injectives -----------------------------------------------------

def socle_spaces(M: Module) -> tuple[np.ndarray, ...]:
    R = M.R
    F = R.F
    out = []
    for i in range(R.n):
        N = M.fdim(i)
        blocks = []
        T = M.T(i)
        for t, (ai, a, b, c) in enumerate(R.arrow_list):
            if a != i or M.maps[t].shape[0] == 0:
                continue
            X = M.maps[t]
            for _ in range(R.delta[i]):
                blocks.append(X)
                X = la.matmul(F, X, T)
        if N == 0:
            out.append(np.zeros((0, 0), dtype=np.int64))
        elif blocks:
            out.append(la.row_space(F, la.nullspace(F, np.vstack(blocks), N)))
        else:
            out.append(np.eye(N, dtype=np.int64))
    return tuple(out)


def socle_dim(M: Module) -> tuple[int, ...]:
    """Dimension vector (over the F_i) of soc M."""
    return tuple(U.shape[0] // M.R.delta[i] for i, U in enumerate(socle_spaces(M)))


def _injective_hull_of_simple(R: Realization, v: int) -> Module:
    """I_v (v 0-based) built as the cofree module on S_v."""
    F = R.F
    Q = R.Q
    # process vertices so that every arrow target is done before its source
    order: list[int] = []
    seen: set[int] = set()

    def visit(x):
        if x in seen:
            return
        seen.add(x)
        for a in Q.arrows_out(x + 1):
            visit(a.target - 1)
        order.append(x)

    for x in range(R.n):
        visit(x)
    fd = [0] * R.n
    Ts: list[np.ndarray] = [np.zeros((0, 0), dtype=np.int64)] * R.n
    # evaluation maps per arrow entry, as (rows of target, columns of source) filled later
    evals: dict[int, tuple[int, int]] = {}  # arrow entry -> (column offset in source, length)
    for x in order:
        dl = R.delta[x]
        Cx = R.C[x]
        if x == v:
            fd[x] = dl
            Ts[x] = Cx.copy() if dl > 1 else np.eye(1, dtype=np.int64)
            continue
        blocks = []
        off = 0
        for t, (ai, a, b, c) in enumerate(R.arrow_list):
            if a != x or fd[b] == 0:
                continue
            Nk = fd[b]
            # Hom_{F_s}(F_x, V_b): blocks H_0..H_{dl-1}; t acts by C^T (x) I
            blocks.append(la.kron(F, Cx.T, np.eye(Nk, dtype=np.int64)) if dl > 1
                          else np.eye(Nk, dtype=np.int64))
            evals[t] = (off, Nk)
            off += dl * Nk
        fd[x] = off
        T = np.zeros((off, off), dtype=np.int64)
        o = 0
        for B in blocks:
            T[o:o + B.shape[0], o:o + B.shape[0]] = B
            o += B.shape[0]
        Ts[x] = T
    maps = []
    for t, (ai, a, b, c) in enumerate(R.arrow_list):
        A = np.zeros((fd[b], fd[a]), dtype=np.int64)
        if t in evals:
            o, Nk = evals[t]
            A[:, o:o + Nk] = np.eye(Nk, dtype=np.int64)
        maps.append(A)
    return module_from_structure(R, fd, Ts, maps)


def injective_module(R: Realization, mult) -> Module:
    """⊕ I_i^{mult_i}."""
    parts = []
    for v, k in enumerate(mult):
        if k:
            parts.extend([_injective_hull_of_simple(R, v)] * int(k))
    return direct_sum(*parts) if parts else zero_module(R)


def injective_dims(R: Realization, v: int) -> tuple[int, ...]:
    return _injective_hull_of_simple(R, v - 1).dims


def is_injective(M: Module) -> bool:
    """An injective is the injective hull of its socle."""
    soc = socle_dim(M)
    return injective_module(M.R, soc).dims == M.dims


def injective_multiplicities(M: Module) -> tuple[int, ...]:
    if not is_injective(M):
        raise NotInjective(f"module with dims {M.dims} is not injective")
    return socle_dim(M)


# -- fast Grassmannian counts ---------------------------------------------------

def _gauss_binom_at(n: int, k: int, Q: int) -> int:
    if k < 0 or k > n:
        return 0
    num = den = 1
    for t in range(k):
        num *= Q ** (n - t) - 1
        den *= Q ** (t + 1) - 1
    return num // den


def _f_span(R: Realization, v: int, vectors: np.ndarray, dims_v: int) -> np.ndarray:
    """F_v-span (as F_s row basis) of the given F_s row vectors in V_v."""
    F = R.F
    if vectors.shape[0] == 0:
        return vectors.reshape(0, R.vdim(v, dims_v))
    rows = [vectors]
    if R.delta[v] > 1:
        T = R.T(v, dims_v)
        X = vectors
        for _ in range(R.delta[v] - 1):
            X = la.matmul(F, T, X.T).T
            rows.append(X)
    return la.row_space(F, np.vstack(rows))


def gr_count_fast(M: Module, e) -> int:
    """|Gr_e(M)|: enumerate non-sink vertices, count sink choices with Gaussian binomials."""
    R = M.R
    F = R.F
    e = tuple(int(x) for x in e)
    if any(not 0 <= e[i] <= M.dims[i] for i in range(R.n)):
        return 0
    arrows = R.arrow_list
    # vertices whose outgoing maps vanish in M behave like sinks
    sinks = [v for v in range(R.n)
             if all(a != v or not np.any(M.maps[t]) for t, (_, a, _, _) in enumerate(arrows))]
    inner = [v for v in range(R.n) if v not in sinks]
    lists = {v: list(invariant_subspaces(R, v, M.dims[v], e[v])) for v in inner}
    total = 0
    for combo in itertools.product(*[lists[v] for v in inner]):
        U = dict(zip(inner, combo))
        ok = True
        for t, (ai, a, b, c) in enumerate(arrows):
            if a in U and b in U and not la.maps_into(F, U[a], M.maps[t], U[b]):
                ok = False
                break
        if not ok:
            continue
        count = 1
        for v in sinks:
            imgs = [la.matmul(F, M.maps[t], U[a].T).T for t, (ai, a, b, c) in enumerate(arrows)
                    if b == v and a in U and U[a].shape[0]]
            W = _f_span(R, v, np.vstack(imgs), M.dims[v]) if imgs else np.zeros((0, M.fdim(v)), dtype=np.int64)
            w = W.shape[0] // R.delta[v]
            count *= _gauss_binom_at(M.dims[v] - w, e[v] - w, R.s ** R.delta[v])
            if not count:
                break
        total += count
    return total
