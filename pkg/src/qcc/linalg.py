"""Dense linear algebra over a finite field given by lookup tables.

Vectors are columns; a subspace is stored as a matrix whose rows form a
basis in reduced row echelon form.
"""

from __future__ import annotations

import itertools

import numpy as np

from . import kernels
from .fields import GF


def zeros(r: int, c: int) -> np.ndarray:
    return np.zeros((r, c), dtype=np.int64)


def eye(F: GF, n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def add(F: GF, A, B) -> np.ndarray:
    if F.is_prime:
        return (np.asarray(A) + np.asarray(B)) % F.order
    return F.add_t[A, B]


def neg(F: GF, A) -> np.ndarray:
    if F.is_prime:
        return (-np.asarray(A)) % F.order
    return F.neg_t[A]


def sub(F: GF, A, B) -> np.ndarray:
    return add(F, A, neg(F, B))


def scale(F: GF, c: int, A) -> np.ndarray:
    if F.is_prime:
        return (c * np.asarray(A)) % F.order
    return F.mul_t[c, A]


def matmul(F: GF, A, B) -> np.ndarray:
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    if A.shape[1] != B.shape[0]:
        raise ValueError(f"shape mismatch {A.shape} x {B.shape}")
    if F.is_prime:
        return (A @ B) % F.order
    out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    for k in range(A.shape[1]):
        out = F.add_t[out, F.mul_t[A[:, k][:, None], B[k, :][None, :]]]
    return out


def kron(F: GF, A, B) -> np.ndarray:
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    prod = F.mul_t[A[:, None, :, None], B[None, :, None, :]]
    return prod.reshape(A.shape[0] * B.shape[0], A.shape[1] * B.shape[1])


def rref(F: GF, A):
    A = np.asarray(A, dtype=np.int64)
    if A.size == 0:
        return A.copy(), []
    return kernels.rref(A, *F.tables())


def rank(F: GF, A) -> int:
    return len(rref(F, A)[1])


def row_space(F: GF, A) -> np.ndarray:
    """RREF basis (as rows) of the row space of A."""
    A = np.asarray(A, dtype=np.int64)
    if A.shape[0] == 0:
        return A.reshape(0, A.shape[1]) if A.ndim == 2 else np.zeros((0, 0), dtype=np.int64)
    R, piv = rref(F, A)
    return R[: len(piv)]


def nullspace(F: GF, A, ncols: int | None = None) -> np.ndarray:
    """Basis (rows) of {x : A x = 0}."""
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[1] if A.ndim == 2 and A.size else (ncols if ncols is not None else A.shape[-1])
    if A.size == 0:
        return np.eye(n, dtype=np.int64)
    R, piv = rref(F, A)
    free = [c for c in range(n) if c not in piv]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for t, f in enumerate(free):
        basis[t, f] = 1
        for r, p in enumerate(piv):
            basis[t, p] = F.neg_t[R[r, f]]
    return basis


def solve(F: GF, A, b):
    """One solution of A x = b, or None."""
    A = np.asarray(A, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64).reshape(-1)
    n = A.shape[1]
    if A.shape[0] == 0:
        return np.zeros(n, dtype=np.int64)
    aug = np.concatenate([A, b[:, None]], axis=1)
    R, piv = rref(F, aug)
    if n in piv:
        return None
    x = np.zeros(n, dtype=np.int64)
    for r, p in enumerate(piv):
        x[p] = R[r, n]
    return x


def inverse(F: GF, A) -> np.ndarray:
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[0]
    R, piv = rref(F, np.concatenate([A, np.eye(n, dtype=np.int64)], axis=1))
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise ValueError("matrix is singular")
    return R[:, n:]


def in_span(F: GF, U, x) -> bool:
    U = np.asarray(U, dtype=np.int64)
    if U.shape[0] == 0:
        return not np.any(x)
    return rank(F, np.vstack([U, np.asarray(x).reshape(1, -1)])) == rank(F, U)


def is_invariant(F: GF, U, A) -> bool:
    """Whether span(rows of U) is mapped into itself by A (acting on columns)."""
    U = np.asarray(U, dtype=np.int64)
    if U.shape[0] == 0:
        return True
    images = matmul(F, A, U.T).T
    return rank(F, np.vstack([U, images])) == U.shape[0]


def maps_into(F: GF, U, A, W) -> bool:
    """Whether A maps span(U) into span(W)."""
    U = np.asarray(U, dtype=np.int64)
    if U.shape[0] == 0:
        return True
    images = matmul(F, A, U.T).T
    if not np.any(images):
        return True
    W = np.asarray(W, dtype=np.int64)
    if W.shape[0] == 0:
        return False
    return rank(F, np.vstack([W, images])) == W.shape[0]


def subspaces(F: GF, n: int, k: int):
    """All k-dimensional subspaces of F^n, each as its RREF basis."""
    if k == 0:
        yield np.zeros((0, n), dtype=np.int64)
        return
    for piv in itertools.combinations(range(n), k):
        free = [(r, c) for r in range(k) for c in range(piv[r] + 1, n) if c not in piv]
        for vals in itertools.product(range(F.order), repeat=len(free)):
            M = np.zeros((k, n), dtype=np.int64)
            for r, c in enumerate(piv):
                M[r, c] = 1
            for (r, c), v in zip(free, vals):
                M[r, c] = v
            yield M


def complement_basis(F: GF, U, n: int) -> np.ndarray:
    """Rows extending span(U) to F^n (standard basis vectors)."""
    U = np.asarray(U, dtype=np.int64)
    U = U.reshape(U.shape[0] if U.ndim == 2 else 0, n)
    piv = rref(F, U)[1] if U.shape[0] else []
    rest = [c for c in range(n) if c not in piv]
    out = np.zeros((len(rest), n), dtype=np.int64)
    for t, c in enumerate(rest):
        out[t, c] = 1
    return out


def coordinates(F: GF, basis, x) -> np.ndarray:
    """Coordinates of x in the (row) basis; raises if x is not in the span."""
    basis = np.asarray(basis, dtype=np.int64)
    sol = solve(F, basis.T, x)
    if sol is None:
        raise ValueError("vector not in span")
    return sol


def combine(F: GF, coeffs, basis) -> np.ndarray:
    """F-linear combination sum c_t basis[t] of arrays of equal shape."""
    basis = np.asarray(basis, dtype=np.int64)
    out = np.zeros(basis.shape[1:], dtype=np.int64)
    for c, B in zip(coeffs, basis):
        c = int(c)
        if c:
            out = add(F, out, scale(F, c, B))
    return out
