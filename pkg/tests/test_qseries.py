import pytest
from hypothesis import given, strategies as st

from twisted_terada.qseries import (
    G,
    Q,
    gauss_bracket,
    phi21_finite,
    q_binom,
    q_binom_pascal,
    q_factorial,
    q_pochhammer,
    rising_factorial,
    verify_classical_chu_vandermonde,
    verify_g_binomial_alternating,
    verify_q_chu_vandermonde,
    verify_reversal_identity,
)
from twisted_terada.ratfun import RationalFunction, const, monomial, rat_eq, symbols

a, b, g = symbols("a b g")


def test_gauss_bracket():
    assert gauss_bracket(1) == const(1)
    assert gauss_bracket(3) == 1 + g + g * g
    with pytest.raises(ValueError):
        gauss_bracket(0)


def test_q_factorial_small():
    assert q_factorial(0) == const(1)
    assert q_factorial(3) == (1 + g) * (1 + g + g * g)


def test_q_binom_fixture():
    assert q_binom(4, 2) == 1 + g + 2 * g ** 2 + g ** 3 + g ** 4


@given(st.integers(0, 9).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, n))))
def test_q_binom_against_pascal_recursion(nm):
    n, m = nm
    assert q_binom(n, m) == q_binom_pascal(n, m)


@given(st.integers(0, 8).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, n))))
def test_q_binom_at_one_is_binomial(nm):
    from math import comb

    n, m = nm
    assert q_binom(n, m).evaluate({"g": 1}) == comb(n, m)


def test_q_binom_domain():
    with pytest.raises(ValueError):
        q_binom(2, 3)


def test_q_pochhammer():
    assert rat_eq(q_pochhammer(a, 0), RationalFunction(1))
    assert rat_eq(q_pochhammer(a, 3), (1 - a) * (1 - a * g) * (1 - a * g * g))
    # (1/a; g)_1 = 1 - 1/a
    assert rat_eq(q_pochhammer(RationalFunction(1, a), 1), RationalFunction(a - 1, a))
    # the base can be any registered symbol
    q = monomial(1, q=1)
    assert rat_eq(q_pochhammer(b, 2, Q), (1 - b) * (1 - b * q))


@pytest.mark.parametrize("n", range(1, 11))
def test_alternating_g_binomial_sum_vanishes(n):
    assert verify_g_binomial_alternating(n)


@pytest.mark.parametrize("n", range(1, 7))
def test_q_chu_vandermonde(n):
    assert verify_q_chu_vandermonde(n)


@pytest.mark.parametrize("n", range(1, 7))
def test_reversal_identity(n):
    assert verify_reversal_identity(n)


@pytest.mark.parametrize("n", range(1, 7))
def test_classical_chu_vandermonde(n):
    assert verify_classical_chu_vandermonde(n)


def test_phi21_first_terms():
    q, x = monomial(1, q=1), monomial(1, x=1)
    # n = 1: 1 + (1 - 1/q)(1 - b) x / ((1 - q)(1 - c))
    c = monomial(1, c=1)
    expected = 1 + RationalFunction((1 - q ** -1) * (1 - b) * x, (1 - q) * (1 - c))
    assert rat_eq(phi21_finite(1, b, c, x), expected)
    assert rat_eq(phi21_finite(0, b, c, x), RationalFunction(1))


def test_rising_factorial():
    beta = monomial(1, beta=1)
    assert rat_eq(rising_factorial(beta, 3), beta * (beta + 1) * (beta + 2))
    assert rat_eq(rising_factorial(-2, 3), RationalFunction(0))
