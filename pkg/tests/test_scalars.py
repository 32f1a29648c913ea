from fractions import Fraction
from itertools import product

import pytest
import sympy
from hypothesis import given, strategies as st

from leala.scalars import (ONE, T, ZERO, ScalarError, as_scalar, format_scalar, parse_scalar,
                           q_linear_independent, rational_function, scalar_arith)

fractions = st.fractions(max_denominator=20).filter(lambda x: abs(x) < 50)
polys = st.lists(st.integers(-4, 4), min_size=1, max_size=4)


@st.composite
def scalars(draw):
    num = draw(polys)
    den = draw(polys.filter(lambda p: any(p)))
    return rational_function(tuple(Fraction(x) for x in num), tuple(Fraction(x) for x in den))


def to_sympy(x):
    t = sympy.Symbol("t")
    return sympy.sympify(format_scalar(x).replace("^", "**"), locals={"t": t})


def test_rational_addition():
    assert scalar_arith(Fraction(1, 2), Fraction(1, 3), "add") == Fraction(5, 6)


def test_gcd_cancellation():
    x = rational_function((-1, 0, 1), (-1, 1))
    assert x == T + 1
    assert format_scalar(x) == "(t+1)/(1)"


def test_inverse():
    assert T * (ONE / T) == 1


def test_division_by_zero():
    with pytest.raises(ScalarError):
        scalar_arith(T, ZERO, "div")


@given(scalars(), scalars(), scalars())
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a
    if a != 0:
        assert a * (ONE / a) == 1


@given(scalars(), scalars())
def test_arithmetic_agrees_with_sympy(a, b):
    assert sympy.simplify(to_sympy(a * b) - to_sympy(a) * to_sympy(b)) == 0
    assert sympy.simplify(to_sympy(a + b) - to_sympy(a) - to_sympy(b)) == 0


@given(scalars())
def test_canonical_form_roundtrip(a):
    s = format_scalar(a)
    assert parse_scalar(s) == a
    assert format_scalar(parse_scalar(s)) == s


@given(scalars(), scalars())
def test_equality_iff_same_encoding(a, b):
    assert (a == b) == (format_scalar(a) == format_scalar(b))


def test_rational_embeds():
    assert as_scalar(3) == Fraction(3)
    assert rational_function((Fraction(2),)) == Fraction(2)


@pytest.mark.parametrize("values,expected", [
    ([ONE, T], True),
    ([Fraction(1), Fraction(2), Fraction(3)], False),
    ([T, T * T, T - T * T], False),
    ([ONE, T, T * T, T ** 3], True),
    ([ONE / T, ONE, T], True),
])
def test_q_linear_independent_examples(values, expected):
    assert q_linear_independent(values) == expected


@given(st.lists(st.lists(st.integers(-2, 2), min_size=5, max_size=5), min_size=1, max_size=5))
def test_q_linear_independent_matches_coefficient_rank(rows):
    # polynomials of degree <= 4 given by coefficient rows; oracle: rank over Q
    values = [rational_function(tuple(Fraction(c) for c in r)) for r in rows]
    rank = sympy.Matrix(rows).rank()
    assert q_linear_independent(values) == (rank == len(rows))


def test_brute_force_small_combinations():
    vals = [T, T * T, T - T * T]
    found = [c for c in product(range(-2, 3), repeat=3)
             if any(c) and sum((k * v for k, v in zip(c, vals)), ZERO) == 0]
    assert found and not q_linear_independent(vals)
