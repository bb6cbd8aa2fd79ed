from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from umbral.algebra import Polynomial, Series
from umbral.errors import NotReversible, OrderTooLow, ValidationError
from umbral.functionals import from_moments, point_eval, uniform01
from umbral.operators import (
    DeltaOperator,
    ShiftInvariantOp,
    basic_sequence,
    delta_left_inverse,
    functional_to_op,
    left_inverse_symbol,
    op_apply,
    op_indicator,
    op_to_functional,
)

from oracles import falling_factorial
from strategies import coeff_lists, nonzero_rationals, rationals

F = Fraction
N = 12


def test_derivative_symbol_differentiates():
    d = DeltaOperator.derivative(N)
    assert d(Polynomial([1, 2, 3])) == Polynomial([2, 6])


def test_difference_operator():
    dlt = DeltaOperator.difference(1, N)
    p = Polynomial.monomial(3)
    assert dlt(p) == p.shift(1) - p
    half = DeltaOperator.difference(F(1, 2), N)
    assert half(p) == p.shift(F(1, 2)) - p
    assert half.b.compose(half.bbar) == Series.t(N)


def test_difference_basic_sequence_is_falling_factorial():
    qs = basic_sequence(DeltaOperator.difference(1, N), 8)
    for n, q in enumerate(qs):
        assert list(q.coeffs) == falling_factorial(n)


def test_series_delta_basic_sequence():
    # Bbar = t + t^2 : q_2 = x^2 - 2x
    q = DeltaOperator.from_bhat([1, 2], N)
    qs = basic_sequence(q, 4)
    assert qs[2] == Polynomial([0, -2, 1])
    for n in range(1, 5):
        assert q(qs[n]) == qs[n - 1] * n


def test_delta_validation():
    with pytest.raises(ValidationError):
        DeltaOperator.from_bhat([0, 1])
    with pytest.raises(ValidationError):
        DeltaOperator.difference(0)
    with pytest.raises(NotReversible):
        DeltaOperator(Series([1, 1], N))


def test_order_guard():
    op = ShiftInvariantOp(Series.t(3))
    with pytest.raises(OrderTooLow):
        op_apply(op, Polynomial.monomial(3))
    with pytest.raises(OrderTooLow):
        basic_sequence(DeltaOperator.derivative(4), 4)


def test_left_inverse_examples():
    dlt = DeltaOperator.difference(1, N)
    assert delta_left_inverse(dlt, Polynomial([1])) == Polynomial([F(-1, 2), 1])
    assert left_inverse_symbol(DeltaOperator.derivative(N)) == Series.one(N - 1)


def test_functional_op_bridge_examples():
    # j(uniform01)(x^2) = x^2 + x + 1/3
    op = functional_to_op(uniform01(), N)
    assert op(Polynomial.monomial(2)) == Polynomial([F(1, 3), 1, 1])
    assert op_to_functional(op).moments(4) == uniform01().moments(4)
    # j(eval(a)) is translation by a
    a = F(2, 3)
    p = Polynomial([1, -1, 0, 5])
    assert functional_to_op(point_eval(a), N)(p) == p.shift(a)


@st.composite
def deltas(draw):
    bh = [draw(nonzero_rationals)] + draw(st.lists(rationals, min_size=3, max_size=3))
    return DeltaOperator.from_bhat(bh, N)


@given(deltas(), coeff_lists, rationals)
def test_left_inverse_is_right_inverse(q, c, x0):
    p = Polynomial(c)
    y = delta_left_inverse(q, p, x0)
    assert q(y) == p


@given(deltas())
def test_basic_sequence_properties(q):
    qs = basic_sequence(q, 8)
    assert qs[0] == Polynomial([1])
    for n in range(1, 9):
        assert qs[n](F(0)) == 0
        assert q(qs[n]) == qs[n - 1] * n


@given(coeff_lists, coeff_lists, coeff_lists)
def test_shift_invariant_ops_commute(a, b, c):
    s1 = Series(list(a) + [0] * N, N)
    s2 = Series(list(b) + [0] * N, N)
    A, B = ShiftInvariantOp(s1), ShiftInvariantOp(s2)
    p = Polynomial(c)
    assert A(B(p)) == B(A(p)) == (A @ B)(p)


@given(coeff_lists, rationals)
def test_operators_commute_with_translation(c, a):
    op = functional_to_op(from_moments([1, F(1, 3), 2, -1]), N)
    p = Polynomial(c)
    assert op(p.shift(a)) == op(p).shift(a)


def test_op_indicator_recovers_symbol():
    dlt = DeltaOperator.difference(1, 8)
    assert op_indicator(dlt, 8) == dlt.bbar
