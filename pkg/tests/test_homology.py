import itertools
import json
from fractions import Fraction
from math import comb, factorial

import pytest

from twisted_terada.homology import (
    JnReport,
    a_closed,
    a_recursive,
    b_closed,
    b_recursive,
    c_closed,
    helper_f,
    helper_p,
    helper_q,
    helper_s,
    j3_general,
    j3_parts,
    jn_closed,
    jn_decomposed,
    jn_enumerated,
    jn_prop8,
    jn_report,
    pair_intersection,
    self_intersection_unsigned,
    x_closed,
    x_monomial_sum,
    y_closed,
    y_monomial_sum,
)
from twisted_terada.qseries import q_factorial
from twisted_terada.ratfun import RationalFunction, fsum, monomial, rat_eq
from twisted_terada.terada import Interval, LaminarFamily, all_intervals, bracket, is_compatible

a, b, g = (monomial(1, {v: 1}) for v in "abg")


def br(lo, hi, n):
    return bracket(Interval(lo, hi, n))


def J2_printed():
    return RationalFunction((a * g * b - 1) * (a * g ** 2 * b - 1),
                            (a - 1) * (a * g - 1) * (b - 1) * (g * b - 1) * (g + 1))


# ---- exact oracle at a rational point ------------------------------------------------------


POINT = {"a": Fraction(2, 3), "b": Fraction(5, 7), "g": Fraction(3, 11)}


def _exponent_value(i, pt):
    k = i.size - 1
    if i.lo == 0:
        return pt["a"] ** k * pt["g"] ** (k * (k - 1))
    if i.hi == i.n + 1:
        return pt["b"] ** k * pt["g"] ** (k * (k - 1))
    return pt["g"] ** (k * (k + 1))


def oracle_jn_over_nfact(n, pt=POINT):
    """Signed monomial sum evaluated with Fractions over brute-force families."""
    pool = list(all_intervals(n))
    total = Fraction(0)
    for r in range(n + 1):
        for combo in itertools.combinations(pool, r):
            if not all(is_compatible(x, y) for x, y in itertools.combinations(combo, 2)):
                continue
            term = Fraction(1)
            for i in combo:
                term /= _exponent_value(i, pt) - 1
                if i.is_interior:
                    q = i.size - 1
                    term *= 1 + (-1) ** q * pt["g"] ** (q * (q + 1) // 2)
            total += term
    return (-1) ** n * total


def closed_at(n, pt=POINT):
    a_, b_, g_ = pt["a"], pt["b"], pt["g"]
    out = Fraction(1)
    for j in range(1, n + 1):
        out *= (1 - a_ * b_ * g_ ** (n + j - 2)) / ((1 - a_ * g_ ** (j - 1)) * (1 - b_ * g_ ** (j - 1)))
        out *= (1 - g_) / (1 - g_ ** j)
    return out


# J_n/n! at POINT, computed once with the Fraction oracle above
FROZEN_AT_POINT = {
    4: Fraction(13173525238624421367481, 1717924965704909270400),
    5: Fraction(292212173529683848809959297446904737, 51420584364330392654472374065593600),
}


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_oracle_agrees_with_closed_form_numbers(n):
    assert oracle_jn_over_nfact(n) == closed_at(n)


def test_frozen_values():
    assert oracle_jn_over_nfact(4) == FROZEN_AT_POINT[4]
    assert closed_at(5) == FROZEN_AT_POINT[5]


def _exact_value(r, pt):
    num = sum(Fraction(c) * _mono_value(k, pt) for k, c in r.num.terms.items())
    den = sum(Fraction(c) * _mono_value(k, pt) for k, c in r.den.terms.items())
    return num / den


def _mono_value(key, pt):
    from twisted_terada.ratfun import registry

    out = Fraction(1)
    for i, e in enumerate(key):
        if e:
            out *= pt[registry()[i]] ** e
    return out


@pytest.mark.parametrize("n", [4, 5])
def test_enumeration_hits_frozen_value(n):
    assert _exact_value(jn_enumerated(n, check=False), POINT) == FROZEN_AT_POINT[n]


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_enumeration_at_rational_point(n):  # float evaluation of the exact result
    e = jn_enumerated(n)
    num = e.num.evaluate(POINT)
    den = e.den.evaluate(POINT)
    # evaluate() works in complex floats; compare against the exact oracle value
    assert abs(num / den - float(oracle_jn_over_nfact(n))) < 1e-9 * abs(float(oracle_jn_over_nfact(n)))


# ---- face sums -------------------------------------------------------------------------------


def test_self_intersection_unsigned_n1():
    assert rat_eq(self_intersection_unsigned(1), 1 + RationalFunction(1, a - 1) + RationalFunction(1, b - 1))


def test_self_intersection_unsigned_n2():
    one = RationalFunction(1)
    b01, b12, b23, b012, b123 = br(0, 1, 2), br(1, 2, 2), br(2, 3, 2), br(0, 2, 2), br(1, 3, 2)
    expected = (one + b01 + b12 + b23 + b012 + b123
                + b01 * b23 + b01 * b012 + b12 * b012 + b12 * b123 + b23 * b123)
    assert rat_eq(self_intersection_unsigned(2), expected)


def test_pair_intersection_pentagon_edge():
    got = pair_intersection(2, LaminarFamily.of(2, (1, 2)))
    assert rat_eq(got, -g * br(1, 2, 2) * (1 + br(0, 2, 2) + br(1, 3, 2)))


def test_pair_intersection_segment_n3():
    got = pair_intersection(3, LaminarFamily.of(3, (1, 2), (1, 3)))
    assert rat_eq(got, g * g ** 3 * br(1, 2, 3) * br(1, 3, 3) * (1 + br(0, 3, 3) + br(1, 4, 3)))


def test_pair_intersection_rectangle_n3():
    s = 1 + br(1, 2, 3) + br(2, 3, 3)
    t = 1 + br(0, 3, 3) + br(1, 4, 3)
    expected = -g ** 3 * br(1, 3, 3) * s * t
    assert rat_eq(pair_intersection(3, LaminarFamily.of(3, (1, 3))), expected)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_empty_face_gives_signed_self_term(n):
    assert rat_eq(pair_intersection(n, LaminarFamily()), (-1) ** n * self_intersection_unsigned(n))


def test_pair_intersection_rejects_boundary_faces():
    with pytest.raises(ValueError):
        pair_intersection(3, LaminarFamily.of(3, (0, 1)))


# ---- J_n -------------------------------------------------------------------------------------


def test_jn_n1_is_beta_factor():
    assert rat_eq(jn_enumerated(1), RationalFunction(1 - a * b, (1 - a) * (1 - b)))


def test_jn_n2_printed_form():
    assert rat_eq(jn_enumerated(2), J2_printed())
    assert rat_eq(jn_closed(2).expand(), 2 * J2_printed())


def test_jn_n3_printed_form():
    num = (g ** 2 * b * a - 1) * (g ** 3 * b * a - 1) * (g ** 4 * b * a - 1)
    den = ((a - 1) * (a * g - 1) * (a * g ** 2 - 1) * (b - 1) * (g * b - 1) * (g ** 2 * b - 1)
           * (g + 1) * (g ** 2 + g + 1))
    assert rat_eq(jn_closed(3).expand(), -6 * RationalFunction(num, den))
    assert rat_eq(jn_enumerated(3), -RationalFunction(num, den))


def test_jn_n2_from_segment_and_pentagon_helpers():
    g2 = g * g
    total = -g * helper_f(g2) * helper_s(a * a * g2, g2 * b * b) + helper_p(a, a * a * g2, g2, g2 * b * b, b)
    assert rat_eq(jn_enumerated(2), total)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_enumeration_equals_closed_form(n):
    assert rat_eq(jn_enumerated(n), jn_closed(n).expand() / factorial(n))


@pytest.mark.slow
def test_enumeration_equals_closed_form_n6():
    assert rat_eq(jn_enumerated(6), jn_closed(6).expand() / factorial(6))


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_decomposition_equals_enumeration(n):
    assert rat_eq(jn_decomposed(n), jn_enumerated(n, check=False))


@pytest.mark.parametrize("n", range(1, 7))
def test_two_closed_forms_agree(n):
    assert rat_eq(jn_closed(n).expand() / factorial(n), (-1) ** n * jn_prop8(n).expand())


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_symmetric_in_a_and_b(n):
    e = jn_enumerated(n, check=False)
    assert rat_eq(e, e.subs({"a": b, "b": a}))


def test_ab_free_part_of_j2():
    b12 = br(1, 2, 2)
    assert rat_eq(1 + (1 - g) * b12, RationalFunction(g, g + 1))
    assert rat_eq(x_monomial_sum(2, 2), 1 + (1 - g) * b12)


# ---- X, Y, A, B ------------------------------------------------------------------------------


def test_x_fixtures():
    assert rat_eq(x_monomial_sum(2, 2), RationalFunction(g, g + 1))
    assert rat_eq(x_monomial_sum(3, 3), RationalFunction(g ** 3, (g + 1) * (g * g + g + 1)))
    assert rat_eq(x_closed(4).expand(),
                  RationalFunction(g ** 6, (g + 1) * (g * g + g + 1) * (g ** 3 + g * g + g + 1)))
    assert rat_eq(y_closed(1).expand(), RationalFunction(1))
    assert rat_eq(y_monomial_sum(1, 3), RationalFunction(1))
    assert rat_eq(x_closed(0).expand(), RationalFunction(1))


@pytest.mark.parametrize("n", range(1, 9))
def test_x_and_y_closed_forms(n):
    assert rat_eq(x_monomial_sum(n, n), x_closed(n).expand())
    assert rat_eq(y_monomial_sum(n, n), y_closed(n).expand())


@pytest.mark.parametrize("n", range(2, 9))
def test_lemma_one(n):
    expected = RationalFunction(monomial(1, g=comb(n, 2)) + (-1) ** n, q_factorial(n))
    assert rat_eq(x_monomial_sum(n - 1, n), expected)


def test_x_domain():
    with pytest.raises(ValueError):
        x_monomial_sum(4, 3)


def test_a_fixtures():
    b01, b012, b0123 = br(0, 1, 3), br(0, 2, 3), br(0, 3, 3)
    x2, x3 = x_monomial_sum(2, 2), x_monomial_sum(3, 3)
    assert rat_eq(a_recursive(1), RationalFunction(1, a - 1))
    assert rat_eq(a_recursive(2), b012 * (x2 + b01))
    assert rat_eq(a_recursive(3), b0123 * (x3 + b01 * x2 + a_recursive(2)))
    assert rat_eq(a_closed(0).expand(), RationalFunction(1))
    assert rat_eq(a_closed(1).expand(), RationalFunction(1, a - 1))


@pytest.mark.parametrize("k", range(1, 7))
def test_boundary_recursions_match_closed_forms(k):
    assert rat_eq(a_recursive(k), a_closed(k).expand())
    assert rat_eq(b_recursive(k), b_closed(k).expand())


@pytest.mark.parametrize("m", range(1, 7))
def test_partial_sums_of_a_times_x(m):
    assert rat_eq(fsum(a_closed(i) * x_closed(m - i) for i in range(m + 1)), c_closed(m).expand())


# ---- helpers and the Terada-3 formula -----------------------------------------------------------


def test_segment_helper():
    assert rat_eq(helper_s(a, b), RationalFunction(a * b - 1, (a - 1) * (b - 1)))


def test_pentagon_helper_has_eleven_terms():
    xs = [a, b, g, a * b, a * g]
    fs = [helper_f(x) for x in xs]
    terms = [RationalFunction(1)] + fs + [fs[i] * fs[(i + 1) % 5] for i in range(5)]
    assert len(terms) == 11
    assert rat_eq(helper_p(*xs), fsum(terms))


def _specialized_q():
    g2 = g * g
    return helper_q(g ** 6 * b ** 3, g2, g2 * b * b, b, a, a * a * g2, g2, a ** 3 * g ** 6, g ** 6)


def test_q_helper_is_terada3_face_sum():
    assert rat_eq(_specialized_q(), self_intersection_unsigned(3))


def test_j3_parts_at_f_h_equal_g():
    parts = j3_parts(g, g, g)
    g2 = g * g
    rectangle = -g ** 3 * helper_f(g ** 6) * helper_s(a ** 3 * g ** 6, g ** 6 * b ** 3) * helper_s(g2, g2)
    assert rat_eq(parts["rectangle zyx"], rectangle)
    assert rat_eq(parts["segment zxy"], parts["segment yzx"])
    assert rat_eq(parts["pentagon yxz"], pair_intersection(3, LaminarFamily.of(3, (1, 2))))
    assert rat_eq(parts["pentagon xzy"], pair_intersection(3, LaminarFamily.of(3, (2, 3))))
    assert rat_eq(parts["T itself"], -_specialized_q())


def test_j3_general_specializes_to_closed_form():
    j = j3_general()
    assert {"f", "h"} <= j.variables()
    assert rat_eq(j.subs({"f": g, "h": g}), jn_closed(3).expand() / 6)


# ---- report -----------------------------------------------------------------------------------


def test_report_json():
    r = jn_report(3)
    assert isinstance(r, JnReport) and r.equal and r.term_count == 45
    d = json.loads(r.dumps())
    assert d["n"] == 3 and d["equal"] is True
    assert ["a*b*g^2 - 1", 1] in d["closed_factors"]
    assert rat_eq(RationalFunction.from_json(d["enumerated"]), jn_closed(3).expand() / 6)
