# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled finite-field kernels (same API as _pykernels)."""

import numpy as np
cimport numpy as cnp

ctypedef cnp.int64_t i64


cdef int _rref_inplace(i64[:, ::1] R, const i64[:, ::1] add, const i64[:, ::1] mul,
                       const i64[::1] neg, const i64[::1] inv, i64[::1] piv) noexcept nogil:
    cdef Py_ssize_t rows = R.shape[0], cols = R.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, p
    cdef i64 s, f, t, nf
    for c in range(cols):
        if r >= rows:
            break
        p = -1
        for i in range(r, rows):
            if R[i, c] != 0:
                p = i
                break
        if p < 0:
            continue
        if p != r:
            for j in range(cols):
                t = R[r, j]
                R[r, j] = R[p, j]
                R[p, j] = t
        s = inv[R[r, c]]
        if s != 1:
            for j in range(cols):
                R[r, j] = mul[s, R[r, j]]
        for i in range(rows):
            if i != r:
                f = R[i, c]
                if f != 0:
                    nf = neg[f]
                    for j in range(cols):
                        if R[r, j] != 0:
                            R[i, j] = add[R[i, j], mul[nf, R[r, j]]]
        piv[r] = c
        r += 1
    return r


def rref(A, add, mul, neg, inv):
    R = np.ascontiguousarray(np.array(A, dtype=np.int64, copy=True))
    if R.ndim != 2:
        raise ValueError("rref needs a 2-d array")
    cdef i64[::1] piv = np.zeros(max(1, min(R.shape[0], R.shape[1])), dtype=np.int64)
    cdef int r = 0
    if R.shape[0] and R.shape[1]:
        r = _rref_inplace(R, np.ascontiguousarray(add), np.ascontiguousarray(mul),
                          np.ascontiguousarray(neg), np.ascontiguousarray(inv), piv)
    return R, [int(piv[i]) for i in range(r)]


def rank(A, add, mul, neg, inv):
    return len(rref(A, add, mul, neg, inv)[1])


def count_units(basis, add, mul, neg, inv, long order, bint stop_at_first=False):
    cdef i64[:, :, ::1] B = np.ascontiguousarray(np.asarray(basis, dtype=np.int64))
    cdef Py_ssize_t h = B.shape[0], K = B.shape[1]
    if K == 0:
        return 1 if stop_at_first else order ** h
    cdef const i64[:, ::1] at = np.ascontiguousarray(add)
    cdef const i64[:, ::1] mt = np.ascontiguousarray(mul)
    cdef const i64[::1] nt = np.ascontiguousarray(neg)
    cdef const i64[::1] it = np.ascontiguousarray(inv)
    cdef i64[::1] coeff = np.zeros(max(h, 1), dtype=np.int64)
    cdef i64[:, ::1] M = np.zeros((K, K), dtype=np.int64)
    cdef i64[::1] piv = np.zeros(K, dtype=np.int64)
    cdef long long count = 0
    cdef Py_ssize_t a, i, j, k
    cdef i64 c
    cdef bint done = False
    with nogil:
        while not done:
            for i in range(K):
                for j in range(K):
                    M[i, j] = 0
            for a in range(h):
                c = coeff[a]
                if c != 0:
                    for i in range(K):
                        for j in range(K):
                            if B[a, i, j] != 0:
                                M[i, j] = at[M[i, j], mt[c, B[a, i, j]]]
            if _rref_inplace(M, at, mt, nt, it, piv) == K:
                count += 1
                if stop_at_first:
                    break
            # odometer increment
            k = 0
            while True:
                if k == h:
                    done = True
                    break
                coeff[k] += 1
                if coeff[k] < order:
                    break
                coeff[k] = 0
                k += 1
    return int(count)
