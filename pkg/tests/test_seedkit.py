import pytest
from hypothesis import given, strategies as st

from qcc.qring import QCoeff
from qcc.seedkit import (Incompatible, QuantumSeed, check_compatible, mutate_matrix, mutate_seed,
                         mutation_sequence, rank2_vars)
from qcc.torus import SkewForm, monomial

L2 = [[0, 1], [-1, 0]]
L2F = SkewForm(L2)


def M(*c):
    return monomial(L2F, c)


@pytest.mark.parametrize("b,c", [(1, 1), (1, 2), (2, 1), (1, 3), (2, 2)])
def test_rank2_compatibility(b, c):
    comp = check_compatible(L2, [[0, b], [-c, 0]])
    assert list(comp.d) == [c, b]


def test_incompatible():
    with pytest.raises(Incompatible):
        check_compatible([[0, 0], [0, 0]], [[0, 1], [-1, 0]])


def test_matrix_mutation():
    assert mutate_matrix([[0, 1], [-1, 0]], 1) == ((0, -1), (1, 0))
    assert mutate_matrix([[0, 2], [-2, 0]], 2) == ((0, -2), (2, 0))


@given(st.lists(st.integers(-3, 3), min_size=3, max_size=3), st.integers(1, 3))
def test_matrix_mutation_involution(xs, k):
    a, b, c = xs
    B = ((0, a, b), (-a, 0, c), (-b, -c, 0))
    assert mutate_matrix(mutate_matrix(B, k), k) == B


def test_a2_first_mutation():
    s = mutate_seed(QuantumSeed.initial(L2, [[0, 1], [-1, 0]]), 1)
    assert s.vars[0] == M(-1, 0) + M(-1, 1)
    assert s.vars[1] == M(0, 1)


@pytest.mark.parametrize("b,c", [(1, 1), (1, 2), (2, 1), (1, 3)])
def test_mutation_involutive(b, c):
    s0 = QuantumSeed.initial(L2, [[0, b], [-c, 0]])
    for k in (1, 2):
        s = mutation_sequence(s0, [k, k])
        assert s.vars == s0.vars
        assert s.btilde == s0.btilde


@pytest.mark.parametrize("b,c", [(1, 1), (1, 2), (2, 1), (1, 3), (3, 1)])
def test_mutation_matches_recursion(b, c):
    # alternating mutations 2,1,2,... walk through the rank-2 sequence
    xs = rank2_vars(b, c, 1, 8)
    s = QuantumSeed.initial(L2, [[0, b], [-c, 0]])
    seen = set(s.vars)
    for k in [1, 2, 1, 2, 1, 2]:
        s = mutate_seed(s, k)
        seen.add(s.vars[k - 1])
    assert seen <= set(xs.values()) | set(rank2_vars(b, c, -8, 2).values())


def test_rank2_examples():
    xs = rank2_vars(1, 1, 1, 6)
    assert xs[3] == M(-1, 1) + M(-1, 0)
    assert xs[6] == xs[1]


@pytest.mark.parametrize("b,c,period", [(1, 1, 5), (1, 2, 6), (2, 1, 6), (1, 3, 8), (3, 1, 8)])
def test_rank2_periodicity(b, c, period):
    xs = rank2_vars(b, c, -5, 12 + period)
    for m in range(-5, 13):
        assert xs[m + period] == xs[m]
    # the period is minimal
    assert all(xs[1 + p] != xs[1] or xs[2 + p] != xs[2] for p in range(1, period))


def test_exchange_relation_even_step():
    # X_{m-1} X_{m+1} = q^{c/2} X_m^c + 1 at even m
    for b, c in [(1, 2), (1, 3)]:
        xs = rank2_vars(b, c, 1, 4)
        lhs = xs[1] * xs[3]
        rhs = (xs[2] ** c).scale(QCoeff.v(c)) + monomial(L2F, (0, 0))
        assert lhs == rhs
