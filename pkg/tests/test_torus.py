import pytest
from hypothesis import given, strategies as st

from qcc.qring import QCoeff
from qcc.torus import (NotUnique, SkewForm, TorusElement, min_exponent, monomial, ordered_word)

L2 = SkewForm([[0, 1], [-1, 0]])


def skew_forms(m):
    return st.lists(st.integers(-3, 3), min_size=m * (m - 1) // 2, max_size=m * (m - 1) // 2).map(
        lambda xs: _skew(m, xs))


def _skew(m, xs):
    L = [[0] * m for _ in range(m)]
    it = iter(xs)
    for i in range(m):
        for j in range(i + 1, m):
            L[i][j] = next(it)
            L[j][i] = -L[i][j]
    return SkewForm(L)


def vec(m):
    return st.lists(st.integers(-4, 4), min_size=m, max_size=m).map(tuple)


@st.composite
def form_and_vectors(draw, k=3):
    m = draw(st.integers(1, 4))
    return draw(skew_forms(m)), [draw(vec(m)) for _ in range(k)]


def test_unit_and_inverse():
    assert monomial(L2, (0, 0)) == TorusElement.one(L2)
    assert monomial(L2, (2, -1)) * monomial(L2, (-2, 1)) == TorusElement.one(L2)


def test_twisted_product():
    assert monomial(L2, (1, 0)) * monomial(L2, (0, 1)) == monomial(L2, (1, 1)).scale(QCoeff.v(1))


def test_distributivity_example():
    x = monomial(L2, (1, 0)).scale(QCoeff.v(1)) + TorusElement.one(L2)
    got = x * monomial(L2, (-1, 0))
    assert got == TorusElement.scalar(L2, QCoeff.v(1)) + monomial(L2, (-1, 0))


def test_ordered_word():
    assert ordered_word(L2, (1, 0)) == monomial(L2, (1, 0))
    assert ordered_word(L2, (0, 0)) == TorusElement.one(L2)
    # X1 X2 = M(1,0) M(0,1) = q^{1/2} M(1,1)
    assert ordered_word(L2, (1, 1)) == monomial(L2, (1, 0)) * monomial(L2, (0, 1))
    assert ordered_word(L2, (1, 1)) == monomial(L2, (1, 1)).scale(QCoeff.v(1))


def test_min_exponent():
    assert min_exponent(monomial(L2, (1, 0)) + monomial(L2, (1, 1))) == (1, 0)
    with pytest.raises(NotUnique) as exc:
        min_exponent(monomial(L2, (1, 0)) + monomial(L2, (0, 1)))
    assert sorted(exc.value.minima) == [(0, 1), (1, 0)]


@given(form_and_vectors())
def test_monomial_laws(data):
    L, (c, d, _) = data
    Mc, Md = monomial(L, c), monomial(L, d)
    cd = tuple(a + b for a, b in zip(c, d))
    assert Mc * Md == monomial(L, cd).scale(QCoeff.v(L(c, d)))
    assert Mc * Md == (Md * Mc).scale(QCoeff.v(2 * L(c, d)))


@given(form_and_vectors())
def test_associativity(data):
    L, (a, b, c) = data
    x = monomial(L, a) + monomial(L, b).scale(QCoeff.v(1))
    y = monomial(L, b) - monomial(L, c)
    z = monomial(L, c) + TorusElement.one(L)
    assert (x * y) * z == x * (y * z)


@given(form_and_vectors())
def test_division_inverts_product(data):
    L, (a, b, c) = data
    x = monomial(L, a) + monomial(L, b)
    y = monomial(L, c).scale(QCoeff.v(-1))
    assert (y * x).left_divide(y) == x
    assert (x * y).right_divide(y) == x


@given(form_and_vectors())
def test_json_roundtrip(data):
    L, (a, b, _) = data
    x = monomial(L, a).scale(QCoeff.v(3) + 2) + monomial(L, b)
    assert TorusElement.from_json(x.to_json()) == x
