from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import gauss_rats, rationals, ratfuns
from staralg.scalars import (
    I,
    LAMBDA,
    ONE,
    ZERO,
    Complex,
    RatFun,
    ScalarSyntaxError,
    format_scalar,
    norm_sq,
    parse_scalar,
    sign_of,
)


def test_sign_examples():
    assert sign_of(0) == 0
    assert sign_of(Fraction(-3, 7)) == -1
    assert sign_of(LAMBDA - 5 * LAMBDA**2) == 1


def test_sign_matches_small_positive_evaluation():
    a = LAMBDA - 5 * LAMBDA**2
    assert a.evaluate(Fraction(1, 100)) == Fraction(1, 100) - Fraction(5, 10000)
    assert a.evaluate(Fraction(1, 100)) > 0


def test_conj_examples():
    assert Complex(2, 3).conj() == Complex(2, -3)
    assert Complex(5).conj() == Complex(5)
    assert (ONE + I) * (ONE - I) == Complex(2)
    assert (ONE + I).conj() * (ONE - I).conj() == Complex(2)


def test_norm_sq_examples():
    assert norm_sq(Complex(3, 4)) == 25
    assert norm_sq(ZERO) == 0
    z = Complex(LAMBDA, LAMBDA)
    assert norm_sq(z) == 2 * LAMBDA**2
    assert sign_of(norm_sq(z)) == 1


def test_ratfun_is_reduced_and_monic():
    f = RatFun([0, 2, 2], [0, 4])  # (2l + 2l^2) / (4l)
    assert f == RatFun([Fraction(1, 2), Fraction(1, 2)], [1])
    assert f.den[-1] == 1


def test_lambda_is_infinitesimal():
    assert LAMBDA > 0
    for n in (1, 10, 1000, 10**6):
        assert LAMBDA < Fraction(1, n)
    assert sign_of(RatFun.const(Fraction(-2, 3))) == -1


@pytest.mark.parametrize(
    "text, ring, expected",
    [
        ("-3", "int", Complex(-3)),
        ("-3/7", "rat", Complex(Fraction(-3, 7))),
        ("2 + 3*i", "int", Complex(2, 3)),
        ("(1 + 2*l)/(1 - l)", "ratfun", Complex(RatFun([1, 2], [1, -1]))),
    ],
)
def test_parse(text, ring, expected):
    assert parse_scalar(text, ring) == expected


@pytest.mark.parametrize("text, ring", [("1/2", "int"), ("l", "rat"), ("2 ** l", "ratfun"), ("x", "ratfun")])
def test_parse_rejects(text, ring):
    with pytest.raises(ScalarSyntaxError):
        parse_scalar(text, ring)


@given(st.one_of(gauss_rats, st.builds(Complex, ratfuns(), ratfuns())))
def test_format_parse_roundtrip(z):
    assert parse_scalar(format_scalar(z), "ratfun") == z


@given(ratfuns(), ratfuns())
def test_sign_is_multiplicative(a, b):
    assert sign_of(a * b) == sign_of(a) * sign_of(b)
    if sign_of(a) == 1 and sign_of(b) == 1:
        assert sign_of(a + b) == 1


@given(rationals, rationals)
def test_rational_sign_laws(a, b):
    assert sign_of(a * b) == sign_of(a) * sign_of(b)
    if a > 0 and b > 0:
        assert sign_of(a + b) == 1


@given(ratfuns())
def test_trichotomy(a):
    assert [a < 0, a == 0, a > 0].count(True) == 1


@given(rationals, rationals)
def test_constants_order_like_rationals(a, b):
    assert (RatFun.const(a) < RatFun.const(b)) == (a < b)


@given(ratfuns())
def test_sign_agrees_with_tiny_evaluation(a):
    # the l-adic sign is the sign of a(t) for all small enough t > 0
    t = Fraction(1, 10**9)
    try:
        value = a.evaluate(t)
    except ZeroDivisionError:
        return
    assert sign_of(a) == (value > 0) - (value < 0)


@given(st.builds(Complex, ratfuns(), ratfuns()), st.builds(Complex, ratfuns(), ratfuns()))
def test_conj_and_norm_laws(z, w):
    assert z.conj().conj() == z
    assert (z * w).conj() == z.conj() * w.conj()
    assert norm_sq(z * w) == norm_sq(z) * norm_sq(w)
    assert sign_of(norm_sq(z)) == (1 if z else 0)
    assert (z.conj() * z).is_real()
