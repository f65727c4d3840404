"""Intersection numbers of the loaded Terada-n cycle and their closed forms.

All face sums are accumulated as :class:`FactoredRational` terms and added with
:func:`fsum`, so that the bracket denominators are shared rather than
multiplied out term by term.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Iterable, Iterator

from .qseries import G, gauss_bracket, q_pochhammer_factored
from .ratfun import (
    FactoredRational,
    LaurentPolynomial,
    RationalFunction,
    as_rational,
    const,
    fsum,
    monomial,
    rat_eq,
)
from .terada import (
    Interval,
    LaminarFamily,
    exponent_of,
    interior_only,
    laminar_families,
)

__all__ = [
    "MonomialTerm",
    "JnReport",
    "self_intersection_unsigned",
    "pair_intersection",
    "jn_enumerated",
    "x_monomial_sum",
    "y_monomial_sum",
    "x_closed",
    "y_closed",
    "a_recursive",
    "b_recursive",
    "a_closed",
    "b_closed",
    "c_closed",
    "jn_decomposed",
    "jn_closed",
    "jn_prop8",
    "helper_f",
    "helper_s",
    "helper_p",
    "helper_q",
    "j3_general",
    "j3_parts",
    "J3_PARTS",
    "jn_report",
]

_g = monomial(1, g=1)


# ---- per-interval factors ------------------------------------------------------


@lru_cache(maxsize=None)
def _bracket_factor(i: Interval) -> LaurentPolynomial:
    return exponent_of(i) - 1


@lru_cache(maxsize=None)
def _angle_parts(i: Interval) -> tuple[int, LaurentPolynomial]:
    # -1/(1 - (-1)^q g^c) as sign / factor
    q = i.size - 1
    c = comb(q + 1, 2)
    if q % 2:
        return -1, monomial(1, g=c) + 1
    return 1, monomial(1, g=c) - 1


def _crossing_weight(i: Interval) -> tuple[int, LaurentPolynomial]:
    # (-1)^q g^(q(q+1)/2)
    q = i.size - 1
    return (-1) ** q, monomial(1, g=q * (q + 1) // 2)


def _bracket_term(members: Iterable[Interval], sign: int = 1) -> FactoredRational:
    return FactoredRational(sign, tuple((_bracket_factor(m), -1) for m in members))


def _monomial_term(fam: LaminarFamily, sign: int = 1) -> FactoredRational:
    """Angle brackets on interior members, square brackets on the rest."""
    factors = []
    for m in fam:
        if m.is_interior:
            s, f = _angle_parts(m)
            sign *= s
        else:
            f = _bracket_factor(m)
        factors.append((f, -1))
    return FactoredRational(sign, tuple(factors))


@dataclass(frozen=True)
class MonomialTerm:
    family: LaminarFamily
    value: RationalFunction
    sign_weight: RationalFunction

    @classmethod
    def of(cls, fam: LaminarFamily, n: int) -> "MonomialTerm":
        return cls(fam, _monomial_term(fam).expand(), RationalFunction((-1) ** n))


# ---- face sums -------------------------------------------------------------------


def self_intersection_unsigned(n: int) -> RationalFunction:
    """Sum over every face of the product of its brackets (empty face gives 1)."""
    return fsum(_bracket_term(fam) for fam in laminar_families(n))


def _check_interior(n: int, fam: LaminarFamily) -> None:
    for m in fam:
        if m.n != n:
            raise ValueError(f"{m} lives in Terada-{m.n}, not Terada-{n}")
        if not m.is_interior:
            raise ValueError(f"pairwise faces need interior intervals, got {m}")


def _pair_terms(n: int, fam: LaminarFamily) -> Iterator[FactoredRational]:
    sign = (-1) ** n
    weight: list[tuple[LaurentPolynomial, int]] = []
    for m in fam:
        s, w = _crossing_weight(m)
        sign *= s
        weight.append((w, 1))
        weight.append((_bracket_factor(m), -1))
    prefix = FactoredRational(sign, tuple(weight))
    own = set(fam.members)
    for other in laminar_families(n):
        if own.issubset(other.members):
            yield prefix * _bracket_term(m for m in other if m not in own)


def pair_intersection(n: int, fam: LaminarFamily) -> RationalFunction:
    """Intersection of T with the Terada-n meeting it along ``fam``.

    The empty family gives the signed self term ``(-1)^n`` times
    :func:`self_intersection_unsigned`.
    """
    _check_interior(n, fam)
    return fsum(_pair_terms(n, fam))


def jn_enumerated(n: int, check: bool = True) -> RationalFunction:
    """J_n / n! as the signed monomial sum over all faces of T.

    With ``check`` the pairwise route (sum of :func:`pair_intersection` over
    every interior face, T itself included) is also computed and must agree.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    sign = (-1) ** n
    monomial_route = fsum(_monomial_term(fam, sign) for fam in laminar_families(n))
    if check:
        pairwise_route = fsum(t for fam in laminar_families(n, interior_only)
                              for t in _pair_terms(n, fam))
        if not rat_eq(pairwise_route, monomial_route):
            raise AssertionError(f"pairwise and monomial routes disagree for n={n}")
    return monomial_route


# ---- monomial sums in the interior letters -------------------------------------


@dataclass(frozen=True)
class _InteriorUpTo:
    """Hashable filter: interior intervals with at most ``k`` letters."""

    k: int

    def __call__(self, i: Interval) -> bool:
        return i.is_interior and i.size <= self.k


def _check_kn(k: int, n: int) -> None:
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")


def x_monomial_sum(k: int, n: int) -> RationalFunction:
    """X(k, n): monomials in 1..n with every sequence of length at most k."""
    _check_kn(k, n)
    return fsum(_monomial_term(f) for f in laminar_families(n, _InteriorUpTo(k)))


def y_monomial_sum(k: int, n: int) -> RationalFunction:
    """Y(k, n): monomials in 1..n whose longest sequence has length exactly k.

    Y(1, n) is 1, the empty monomial.
    """
    _check_kn(k, n)
    if k == 1:
        return RationalFunction(1)
    fams = laminar_families(n, _InteriorUpTo(k))
    return fsum(_monomial_term(f) for f in fams if max((m.size for m in f), default=1) == k)


def _inv_q_factorial(n: int) -> tuple[tuple[LaurentPolynomial, int], ...]:
    return tuple((gauss_bracket(j), -1) for j in range(2, n + 1))


def x_closed(n: int) -> FactoredRational:
    """g^C(n,2) / [n]!; X_0 = 1."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return FactoredRational(1, ((_g, comb(n, 2)),) + _inv_q_factorial(n))


def y_closed(n: int) -> FactoredRational:
    """(-1)^(n+1) / [n]!."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return FactoredRational((-1) ** (n + 1), _inv_q_factorial(n))


# ---- boundary sums A_k and B_k ----------------------------------------------------


def _x_enumerated(m: int) -> RationalFunction:
    return RationalFunction(1) if m == 0 else x_monomial_sum(m, m)


@lru_cache(maxsize=None)
def _boundary_recursive(k: int, top: bool) -> RationalFunction:
    if k < 0:
        raise ValueError("k must be >= 0")
    if k == 0:
        return RationalFunction(1)
    edge = Interval(1, k + 1, k) if top else Interval(0, k, k)
    inner = fsum(_boundary_recursive(p, top) * _x_enumerated(k - p) for p in range(k))
    return inner / _bracket_factor(edge)


def a_recursive(k: int) -> RationalFunction:
    """A_k = [01..k] * sum_{p<k} A_p X_{k-p}, A_0 = 1."""
    return _boundary_recursive(k, False)


def b_recursive(k: int) -> RationalFunction:
    """B_k, the same recursion with [n-k+1 .. n+1] and b."""
    return _boundary_recursive(k, True)


def _boundary_closed(k: int, var: str) -> FactoredRational:
    if k < 0:
        raise ValueError("k must be >= 0")
    one_minus_g = const(1) - _g
    return (FactoredRational((-1) ** k, ((one_minus_g, k),))
            / q_pochhammer_factored(monomial(1, {var: 1}), k, G)
            / q_pochhammer_factored(_g, k, G))


def a_closed(k: int) -> FactoredRational:
    """(-1)^k (1-g)^k / ((a)_k (g)_k)."""
    return _boundary_closed(k, "a")


def b_closed(k: int) -> FactoredRational:
    return _boundary_closed(k, "b")


def c_closed(m: int) -> FactoredRational:
    """(g-1)^m a^m g^(2 C(m,2)) / ((a)_m (g)_m), the partial sums of A_i X_{m-i}."""
    a = monomial(1, a=1)
    return (FactoredRational(1, ((_g - 1, m), (a, m), (_g, 2 * comb(m, 2))))
            / q_pochhammer_factored(a, m, G)
            / q_pochhammer_factored(_g, m, G))


def jn_decomposed(n: int) -> RationalFunction:
    """(-1)^n sum_{i+j<=n} A_i X_{n-i-j} B_j from the closed forms."""
    if n < 1:
        raise ValueError("n must be >= 1")
    sign = (-1) ** n
    return fsum(a_closed(i) * x_closed(n - i - j) * b_closed(j) * sign
                for i in range(n + 1) for j in range(n + 1 - i))


# ---- closed forms for J_n ------------------------------------------------------------


def jn_closed(n: int) -> FactoredRational:
    """n! prod_j (1 - a b g^(n+j-2)) / ((1 - a g^(j-1)) (1 - b g^(j-1))) * (1 - g)/(1 - g^j).

    Each factor 1 - x is stored as x - 1; the five sign flips per j leave (-1)^n
    in the constant.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    factors: list[tuple[LaurentPolynomial, int]] = []
    for j in range(1, n + 1):
        factors += [
            (monomial(1, a=1, b=1, g=n + j - 2) - 1, 1),
            (monomial(1, a=1, g=j - 1) - 1, -1),
            (monomial(1, b=1, g=j - 1) - 1, -1),
            (_g - 1, 1),
            (monomial(1, g=j) - 1, -1),
        ]
    return FactoredRational((-1) ** n * factorial(n), tuple(factors))


def jn_prop8(n: int) -> FactoredRational:
    """(g-1)^n (a b g^(n-1))_n / ((a)_n (b)_n (g)_n), which is (-1)^n J_n / n!."""
    if n < 1:
        raise ValueError("n must be >= 1")
    ab = monomial(1, a=1, b=1, g=n - 1)
    return (FactoredRational(1, ((_g - 1, n),))
            * q_pochhammer_factored(ab, n, G)
            / q_pochhammer_factored(monomial(1, a=1), n, G)
            / q_pochhammer_factored(monomial(1, b=1), n, G)
            / q_pochhammer_factored(_g, n, G))


# ---- the low-dimensional helpers -------------------------------------------------------


# Each helper is built as a list of factored terms; products distribute over
# the lists so that fsum sees every (x - 1) denominator separately.

_Terms = list[FactoredRational]


def _f_terms(x) -> _Terms:
    x = as_rational(x)
    # 1/(x - 1) = den / (num - den)
    return [FactoredRational(1, ((x.den, 1), (x.num - x.den, -1)))]


def _s_terms(x, y) -> _Terms:
    return [FactoredRational(1)] + _f_terms(x) + _f_terms(y)


def _times(*lists: _Terms) -> _Terms:
    out = [FactoredRational(1)]
    for lst in lists:
        out = [u * v for u in out for v in lst]
    return out


def _scaled(c: int, mono: LaurentPolynomial, lst: _Terms) -> _Terms:
    w = FactoredRational(c, ((mono, 1),))
    return [w * t for t in lst]


def _p_terms(x1, x2, x3, x4, x5) -> _Terms:
    fs = [_f_terms(x) for x in (x1, x2, x3, x4, x5)]
    terms = [FactoredRational(1)]
    for f in fs:
        terms += f
    for i in range(5):
        terms += _times(fs[i], fs[(i + 1) % 5])
    return terms


def _q_terms(p1, q1, r1, p2, q2, r2, p3, q3, r3) -> _Terms:
    pv, qv = (p1, p2, p3), (q1, q2, q3)
    p = [_f_terms(x) for x in pv]
    q = [_f_terms(x) for x in qv]
    r = [_f_terms(x) for x in (r1, r2, r3)]
    terms = [FactoredRational(1)]
    for i in range(3):
        j = (i + 1) % 3
        terms += _times(r[i], _s_terms(pv[i], qv[j]), _s_terms(pv[j], qv[i]))
    for i in range(3):
        j = (i + 1) % 3
        terms += p[i] + q[i] + _times(p[i], p[j]) + _times(q[i], q[j])
    terms += _times(*p) + _times(*q)
    for i in range(3):
        terms += _times(p[i], q[i])
    return terms


def helper_f(x) -> RationalFunction:
    """F(x) = 1/(x - 1)."""
    return fsum(_f_terms(x))


def helper_s(x, y) -> RationalFunction:
    """Segment sum S(x, y) = 1 + F(x) + F(y)."""
    return fsum(_s_terms(x, y))


def helper_p(x1, x2, x3, x4, x5) -> RationalFunction:
    """Pentagon sum: 1, the five edges, and the five cyclically adjacent pairs."""
    return fsum(_p_terms(x1, x2, x3, x4, x5))


def helper_q(p1, q1, r1, p2, q2, r2, p3, q3, r3) -> RationalFunction:
    """Self-intersection sum over the 45 faces of a Terada-3 with the given exponents.

    The r's sit on the three rectangles; indices are read modulo 3.
    """
    return fsum(_q_terms(p1, q1, r1, p2, q2, r2, p3, q3, r3))


def _j3_terms(f: LaurentPolynomial, g: LaurentPolynomial, h: LaurentPolynomial) -> list[_Terms]:
    a, b = monomial(1, a=1), monomial(1, b=1)
    f2, g2 = f * f, g * g
    fgh = f * g * h
    fgh2 = fgh * fgh
    a3fgh2 = a ** 3 * fgh2
    fgh2b3 = fgh2 * b ** 3
    rect = _scaled(1, fgh, _f_terms(fgh2))
    segment = _s_terms(a3fgh2, fgh2b3)
    return [
        _scaled(1, f, _times(_f_terms(f2), _p_terms(b, a * a * f2, a3fgh2, fgh2, fgh2b3))),
        _scaled(1, g, _times(_f_terms(g2), _p_terms(a, g2 * b * b, fgh2b3, fgh2, a3fgh2))),
        _scaled(-1, const(1), _times(rect, segment, _s_terms(f2, g2))),
        _scaled(1, f, _times(rect, _f_terms(f2), segment)),
        _scaled(1, g, _times(rect, _f_terms(g2), segment)),
        _scaled(-1, const(1), _q_terms(fgh2b3, g2, g2 * b * b,
                                       b, a, a * a * f2,
                                       f2, a3fgh2, fgh2)),
    ]


J3_PARTS = ("pentagon yxz", "pentagon xzy", "rectangle zyx", "segment zxy", "segment yzx", "T itself")


def j3_parts(f=None, g=None, h=None) -> dict[str, RationalFunction]:
    """The six contributions to J_3 / 3!, keyed by the neighbouring chamber.

    Diagonal variables default to the symbols f, g, h; pass monomials to
    specialize before summing.
    """
    f, g, h = (monomial(1, {v: 1}) if x is None else x for v, x in zip("fgh", (f, g, h)))
    return {name: fsum(ts) for name, ts in zip(J3_PARTS, _j3_terms(f, g, h))}


def j3_general() -> RationalFunction:
    """J_3 / 3! with distinct exponents f^2, g^2, h^2 on the three diagonals."""
    f, g, h = (monomial(1, {v: 1}) for v in "fgh")
    return fsum(t for part in _j3_terms(f, g, h) for t in part)


# ---- report ---------------------------------------------------------------------------


@dataclass(frozen=True)
class JnReport:
    n: int
    enumerated: RationalFunction
    closed: FactoredRational
    equal: bool
    term_count: int

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "equal": self.equal,
            "enumerated": self.enumerated.to_json(),
            "closed_constant": str(self.closed.constant),
            "closed_factors": [[str(f), m] for f, m in self.closed.factors],
            "term_count": self.term_count,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def jn_report(n: int, check: bool = True) -> JnReport:
    """Closed form of J_n / n!, compared to the enumeration when ``check`` is set.

    Without ``check`` the enumerated field holds the expanded closed form and
    ``equal`` is trivially true.
    """
    closed = jn_closed(n) / Fraction(factorial(n))
    expanded = closed.expand()
    if not check:
        return JnReport(n, expanded, closed, True, 0)
    enumerated = jn_enumerated(n)
    return JnReport(n, enumerated, closed, rat_eq(enumerated, expanded), len(laminar_families(n)))
