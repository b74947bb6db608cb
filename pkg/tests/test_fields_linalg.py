import importlib

import numpy as np
import pytest
from hypothesis import given, strategies as st

from qcc import _pykernels, kernels
from qcc import linalg as la
from qcc.fields import check_field_axioms, extension, factor_prime_power, field, prime_powers
from qcc.qring import gaussian_binomial_poly

try:
    _ck = importlib.import_module("qcc._ckernels")
except ImportError:  # pragma: no cover - the fallback is exercised either way
    _ck = None

QS = [2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 49]


@pytest.mark.parametrize("q", QS)
def test_field_axioms(q):
    F = field(q)
    assert F.order == q
    assert check_field_axioms(F)


def test_prime_powers():
    assert list(zip(range(8), prime_powers())) == list(enumerate([2, 3, 4, 5, 7, 8, 9, 11]))
    assert factor_prime_power(49) == (7, 2)
    with pytest.raises(ValueError):
        factor_prime_power(12)


def test_extension_root_has_right_minimal_polynomial():
    base = field(3)
    E = extension(base, 2)
    C = E.mul_matrix_of_root()
    # multiplication by the generator is a 2x2 matrix over F_3 that is not scalar
    assert C.shape == (2, 2)
    assert la.rank(base, la.sub(base, C, np.eye(2, dtype=np.int64) * C[0, 0])) > 0


def random_matrix(q, r, c, seed):
    return np.random.default_rng(seed).integers(0, q, (r, c))


@given(st.sampled_from([2, 3, 4, 9, 25]), st.integers(1, 7), st.integers(1, 7), st.integers(0, 10**6))
def test_backends_agree_on_rref(q, r, c, seed):
    F = field(q)
    A = random_matrix(q, r, c, seed)
    R1, p1 = _pykernels.rref(A.copy(), *F.tables())
    if _ck is not None:
        R2, p2 = _ck.rref(A.copy(), *F.tables())
        assert np.array_equal(R1, R2) and list(p1) == list(p2)
    assert len(p1) == la.rank(F, A)


@given(st.sampled_from([2, 3, 4]), st.integers(1, 3), st.integers(1, 3), st.integers(0, 10**6))
def test_backends_agree_on_units(q, h, k, seed):
    F = field(q)
    basis = np.random.default_rng(seed).integers(0, q, (h, k, k))
    a = _pykernels.count_units(basis, *F.tables(), F.order)
    if _ck is not None:
        assert a == _ck.count_units(basis, *F.tables(), F.order)


def test_count_units_gl():
    # the full matrix algebra: |GL_2(F_q)| = (q^2-1)(q^2-q)
    for q in (2, 3, 4):
        F = field(q)
        basis = np.zeros((4, 2, 2), dtype=np.int64)
        for t in range(4):
            basis[t, t // 2, t % 2] = 1
        assert kernels.count_units(basis, *F.tables(), F.order) == (q * q - 1) * (q * q - q)


@given(st.sampled_from([2, 3, 4, 9]), st.integers(1, 6), st.integers(1, 6), st.integers(0, 10**6))
def test_nullspace_and_solve(q, r, c, seed):
    F = field(q)
    A = random_matrix(q, r, c, seed)
    N = la.nullspace(F, A)
    assert N.shape[0] == c - la.rank(F, A)
    if N.shape[0]:
        assert not np.any(la.matmul(F, A, N.T))
    x = random_matrix(q, c, 1, seed + 1).reshape(-1)
    b = la.matmul(F, A, x.reshape(-1, 1)).reshape(-1)
    y = la.solve(F, A, b)
    assert y is not None
    assert np.array_equal(la.matmul(F, A, y.reshape(-1, 1)).reshape(-1), b)


@pytest.mark.parametrize("q,n,k", [(2, 3, 1), (2, 4, 2), (3, 3, 2), (4, 3, 1)])
def test_subspace_enumeration_counts(q, n, k):
    F = field(q)
    subs = list(la.subspaces(F, n, k))
    want = sum(c * q ** i for i, c in enumerate(gaussian_binomial_poly(n, k)))
    assert len(subs) == want
    assert len({s.tobytes() for s in subs}) == want


def test_inverse():
    F = field(9)
    A = np.array([[1, 2], [3, 4]])
    if la.rank(F, A) == 2:
        assert np.array_equal(la.matmul(F, A, la.inverse(F, A)), np.eye(2, dtype=np.int64))


def test_pure_python_fallback_selected_by_env():
    import os
    import subprocess
    import sys

    out = subprocess.run([sys.executable, "-c", "from qcc import kernels; print(kernels.BACKEND)"],
                         env={**os.environ, "QCC_PURE_PYTHON": "1"}, capture_output=True, text=True,
                         check=True).stdout.strip()
    assert out == "python"
