from fractions import Fraction
from math import comb

import pytest
import sympy as sp
from hypothesis import given, strategies as st

from qcc.qring import (NonExactDivision, QCoeff, bar, eval_at, gaussian_binomial_poly,
                       qbinom)

V = sp.Symbol("v")


def to_sympy(c: QCoeff):
    return sum(a * V ** k for k, a in c.terms.items())


def sympy_qbinom(n, k, scale=2):
    # balanced product formula, evaluated independently in sympy
    x = V ** scale

    def qi(m):
        return (x ** m - x ** -m) / (x - 1 / x)

    num = sp.prod([qi(n - i) for i in range(k)])
    den = sp.prod([qi(i + 1) for i in range(k)])
    return sp.simplify(sp.cancel(num / den))


coeffs = st.dictionaries(st.integers(-6, 6), st.integers(-5, 5), max_size=5).map(QCoeff)


def test_basic_arithmetic():
    h = QCoeff.v(1)
    assert (h + (-h)).is_zero()
    assert (h + QCoeff.v(-1)) ** 2 == QCoeff.v(2) + QCoeff.const(2) + QCoeff.v(-2)
    assert h * QCoeff.v(-1) == QCoeff.const(1)


def test_bar():
    assert bar(QCoeff.v(2)) == QCoeff.v(-2)
    assert bar(QCoeff.v(2) + 2) == QCoeff.v(-2) + 2
    assert bar(qbinom(4, 2)) == qbinom(4, 2)


def test_qbinom_values():
    assert qbinom(2, 1) == QCoeff.v(2) + QCoeff.v(-2)
    assert qbinom(7, 0) == QCoeff.const(1)
    assert qbinom(4, 2).terms == {8: 1, 4: 1, 0: 2, -4: 1, -8: 1}


@pytest.mark.parametrize("n,k,scale", [(4, 2, 2), (5, 2, 1), (6, 3, 2), (3, 1, 4), (7, 3, 1)])
def test_qbinom_matches_sympy(n, k, scale):
    assert sp.expand(to_sympy(qbinom(n, k, scale)) - sympy_qbinom(n, k, scale)) == 0


def test_eval_at():
    assert eval_at(QCoeff.v(2) + 1, 4) == 5
    assert eval_at(QCoeff.v(1), 4) == 2
    # v = 3: 9 + 1/9
    assert eval_at(qbinom(2, 1), 9) == Fraction(82, 9)


def test_gaussian_poly_counts_subspaces():
    # lines in F_2^3 and planes in F_3^4
    assert sum(c * 2 ** i for i, c in enumerate(gaussian_binomial_poly(3, 1))) == 7
    assert sum(c * 3 ** i for i, c in enumerate(gaussian_binomial_poly(4, 2))) == 130


@pytest.mark.parametrize("n", range(13))
def test_qbinom_laws(n):
    for k in range(n + 1):
        b = qbinom(n, k)
        assert bar(b) == b
        assert b.at_one() == comb(n, k)
        if 0 < k < n:
            # both balanced Pascal rules
            assert b == qbinom(n - 1, k) * QCoeff.v(-2 * k) + qbinom(n - 1, k - 1) * QCoeff.v(2 * (n - k))
            assert b == qbinom(n - 1, k) * QCoeff.v(2 * k) + qbinom(n - 1, k - 1) * QCoeff.v(-2 * (n - k))


@given(coeffs, coeffs, coeffs)
def test_ring_axioms(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert bar(a * b) == bar(a) * bar(b)


@given(coeffs, coeffs)
def test_divexact_roundtrip(a, b):
    if b.is_zero():
        return
    assert (a * b).divexact(b) == a


def test_divexact_rejects_inexact():
    with pytest.raises(NonExactDivision):
        (QCoeff.v(2) + 1).divexact(QCoeff.v(2) + 2)


@given(coeffs)
def test_json_roundtrip(a):
    assert QCoeff.from_json(a.to_json()) == a
