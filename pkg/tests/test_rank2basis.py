"""The rank-2 assignment d ↦ X_d, standard monomials and the basis check."""

import pytest
from hypothesis import given, strategies as st

from qcc import catalog
from qcc.ccmap import NotInSpan
from qcc.qring import QCoeff
from qcc.rank2basis import (Rank2, UnsupportedDimension, ZVector2, basis_check, is_unit,
                            porder_leq)
from qcc.seedkit import rank2_vars
from qcc.torus import TorusElement

v = QCoeff.v


@pytest.fixture(scope="module")
def a2():
    return Rank2(1, 1)


@pytest.fixture(scope="module")
def b2():
    return Rank2(1, 2)


def test_zvector_parts():
    d = ZVector2(3, -2)
    assert d.plus == (3, 0) and d.minus == (0, 2)
    assert tuple(d) == (3, -2) and str(d) == "(3,-2)"


def test_porder_examples():
    assert porder_leq((0, 0), (0, 0)) == "equal"
    assert porder_leq((0, 1), (1, 1)) == "≺"
    assert porder_leq((2, 1), (1, 1)) == "≻"
    assert porder_leq((1, 0), (0, 1)) == "incomparable"


@given(st.tuples(st.integers(-5, 5), st.integers(-5, 5)),
       st.tuples(st.integers(-5, 5), st.integers(-5, 5)))
def test_porder_antisymmetric(r, s):
    flip = {"equal": "equal", "≺": "≻", "≻": "≺", "incomparable": "incomparable"}
    assert porder_leq(s, r) == flip[porder_leq(r, s)]


def test_is_unit():
    assert is_unit(v(3)) and is_unit(v(-1, -1))
    assert not is_unit(v(0, 2)) and not is_unit(v(1) + v(-1)) and not is_unit(QCoeff())


def test_xd_small_cases(a2):
    assert a2.make_xd((0, 0)).value == TorusElement.one(a2.lam)
    assert a2.make_xd((-1, 0)).value == TorusElement(a2.lam, {(1, 0): v(0)})
    xs = rank2_vars(1, 1, 1, 5)
    assert a2.make_xd((1, 0)).value == xs[3]
    assert a2.make_xd((1, 1)).value == xs[4]
    assert a2.make_xd((0, 1)).value == xs[5]


def test_xd_cached(a2):
    assert a2.make_xd((1, 0)) is a2.make_xd(ZVector2(1, 0))


def test_minimal_exponent_is_minus_d(b2):
    for d in [(1, 1), (2, 1), (1, 2), (-1, 2), (0, -2)]:
        assert b2.make_xd(d).value.min_exponent() == (-d[0], -d[1])


def test_product_route_matches_counting(b2):
    for d in [(2, 1), (2, 2)]:
        x = b2.make_xd(d)
        assert x.provenance["route"] == "product of summands"
        assert x.value == b2.eng.cc_module(x.obj.module).value


def test_policies(b2):
    split = b2.choose(ZVector2(1, 1), "split-semisimple")
    assert split.module.name == "S2+S1" or sorted(split.module.name.split("+")) == ["S1", "S2"]
    assert b2.choose(ZVector2(1, 1)).module.name == "E11"
    assert b2.choose(ZVector2(1, -1)).inj == (0, 1)
    user = {(1, 1): catalog.descriptor_by_name(b2.Q, "E11")}
    assert b2.choose(ZVector2(1, 1), user).module.name == "E11"
    with pytest.raises(UnsupportedDimension):
        b2.choose(ZVector2(2, 0), user)
    with pytest.raises(ValueError):
        b2.choose(ZVector2(1, 1), "nonsense")


def test_standard_monomial(a2):
    x1 = a2.eng.cc_shift((1, 0)).value
    s2 = a2.eng.cc_module(catalog.single(catalog.root_part((0, 1)))).value
    assert a2.standard((-1, 1)) == x1 * s2
    assert a2.standard((0, 0)) == TorusElement.one(a2.lam)


def test_expand_standard_is_unitriangular(b2):
    exp = b2.expand_standard(b2.make_xd((1, 1)).value)
    assert exp[0][0] == ZVector2(1, 1) and is_unit(exp[0][1])
    assert exp == [(ZVector2(1, 1), v(-1)), (ZVector2(0, -1), v(-2, -1))]


def test_expand_standard_bound(a2):
    with pytest.raises(NotInSpan):
        a2.expand_standard(a2.make_xd((2, 2)).value, bound=1)


def test_basis_check_radius_one():
    rep = basis_check(1, 1, 1)
    assert rep.passed and len(rep.records) == 9
    assert rep.min_equals_neg_d and not rep.min_equals_d
    assert all(c["in_span"] for c in rep.cluster_details)


@pytest.mark.parametrize("b,c", [(1, 2), (2, 1)])
def test_basis_check_finite_types(b, c):
    rep = basis_check(b, c, 2)
    assert rep.passed and rep.distinct_minima and rep.triangular and rep.cluster_in_span


def test_basis_check_split_policy():
    assert basis_check(1, 2, 2, "split-semisimple").passed
