"""Pure-Python implementations of the finite-field hot kernels.

Same signatures as the compiled ``_ckernels`` module.
"""

from __future__ import annotations

import itertools

import numpy as np


def rref(A, add, mul, neg, inv):
    """Reduced row echelon form over a table field; returns (R, pivots)."""
    R = np.array(A, dtype=np.int64, copy=True)
    rows, cols = R.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            R[[r, piv]] = R[[piv, r]]
        s = inv[R[r, c]]
        if s != 1:
            R[r] = mul[s, R[r]]
        for i in range(rows):
            if i != r:
                f = R[i, c]
                if f:
                    R[i] = add[R[i], mul[neg[f], R[r]]]
        pivots.append(c)
        r += 1
    return R, pivots


def rank(A, add, mul, neg, inv):
    return len(rref(A, add, mul, neg, inv)[1])


def _nonsingular(M, add, mul, neg, inv):
    n = M.shape[0]
    return rank(M, add, mul, neg, inv) == n


def count_units(basis, add, mul, neg, inv, order, stop_at_first=False):
    """Count nonsingular matrices among all F-combinations of ``basis``.

    ``basis`` has shape (h, K, K).  With ``stop_at_first`` returns 1 as soon
    as one nonsingular combination is found.
    """
    basis = np.asarray(basis, dtype=np.int64)
    h = basis.shape[0]
    K = basis.shape[1]
    if K == 0:
        return order ** h if not stop_at_first else 1
    count = 0
    for coeffs in itertools.product(range(order), repeat=h):
        M = np.zeros((K, K), dtype=np.int64)
        for c, B in zip(coeffs, basis):
            if c:
                M = add[M, mul[c, B]]
        if _nonsingular(M, add, mul, neg, inv):
            count += 1
            if stop_at_first:
                return 1
    return count
