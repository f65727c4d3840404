"""Self-intersection of the twisted form omega = dt_1 ... dt_n / prod t_i (1 - t_i).

Only the admissible vertices of T contribute; each gives the reciprocal of
the product of the additive exponents of the n hyperfaces through it.  The
(2 pi i)^n factor is carried as an integer tag.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial

from .ratfun import (
    FactoredRational,
    LaurentPolynomial,
    RationalFunction,
    const,
    declare,
    fsum,
    monomial,
    rat_eq,
)
from .terada import Interval, Kind, LaminarFamily

__all__ = [
    "AdditiveExponent",
    "TwoPiPower",
    "admissible_vertices",
    "additive_exponent_of",
    "vertex_contribution",
    "omega_self_intersection",
    "omega_closed",
    "beta_n_face_sum",
    "beta_n_simplex_self",
    "beta_n_simplex_closed",
    "beta_n_form_self",
    "beta_n_form_closed",
    "verify_theorem2",
]


@dataclass(frozen=True)
class AdditiveExponent:
    coeff_alpha: int = 0
    coeff_beta: int = 0
    coeff_gamma: int = 0

    def __post_init__(self):
        if not (self.coeff_alpha or self.coeff_beta or self.coeff_gamma):
            raise ValueError("a hyperface exponent cannot be identically zero")

    def as_poly(self) -> LaurentPolynomial:
        return (monomial(self.coeff_alpha, alpha=1)
                + monomial(self.coeff_beta, beta=1)
                + monomial(self.coeff_gamma, gamma=1))

    def __str__(self):
        return str(self.as_poly())


@dataclass(frozen=True)
class TwoPiPower:
    """``(2 pi i)^power * rational_part``."""

    power: int
    rational_part: RationalFunction | FactoredRational

    def __post_init__(self):
        if self.power < 0:
            raise ValueError("power must be nonnegative")

    def expanded(self) -> RationalFunction:
        r = self.rational_part
        return r.expand() if isinstance(r, FactoredRational) else r

    def to_json(self) -> dict:
        r = self.rational_part
        return {"two_pi_i_power": self.power, "rational_part": r.to_json()}


def admissible_vertices(n: int) -> list[LaminarFamily]:
    """Vertex k is (01) ∩ ... ∩ (0..k) ∩ (k+1..n+1) ∩ ... ∩ (n, n+1)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    out = []
    for k in range(n + 1):
        members = [Interval(0, i, n) for i in range(1, k + 1)]
        members += [Interval(j, n + 1, n) for j in range(k + 1, n + 1)]
        out.append(LaminarFamily(tuple(members)))
    return out


def additive_exponent_of(i: Interval, n: int | None = None) -> AdditiveExponent:
    if n is not None and n != i.n:
        raise ValueError(f"{i} lives in Terada-{i.n}, not Terada-{n}")
    k = i.size - 1
    if i.kind is Kind.BOUNDARY0:
        return AdditiveExponent(k, 0, k * (k - 1))
    if i.kind is Kind.BOUNDARY_TOP:
        return AdditiveExponent(0, k, k * (k - 1))
    m = i.size
    return AdditiveExponent(0, 0, m * (m - 1))


def _vertex_term(fam: LaminarFamily) -> FactoredRational:
    return FactoredRational(1, tuple((additive_exponent_of(m).as_poly(), -1) for m in fam))


def vertex_contribution(n: int, k: int) -> RationalFunction:
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    return _vertex_term(admissible_vertices(n)[k]).expand()


def omega_self_intersection(n: int) -> TwoPiPower:
    """(2 pi i)^n n! times the sum over admissible vertices."""
    terms = [_vertex_term(v) * factorial(n) for v in admissible_vertices(n)]
    return TwoPiPower(n, fsum(terms))


def omega_closed(n: int) -> TwoPiPower:
    """(2 pi i)^n prod_j (alpha + beta + (n+j-2) gamma) / ((alpha + (j-1) gamma)(beta + (j-1) gamma))."""
    if n < 1:
        raise ValueError("n must be >= 1")
    al, be, ga = monomial(1, alpha=1), monomial(1, beta=1), monomial(1, gamma=1)
    factors = []
    for j in range(1, n + 1):
        factors += [
            (al + be + ga.scale(n + j - 2), 1),
            (al + ga.scale(j - 1), -1),
            (be + ga.scale(j - 1), -1),
        ]
    return TwoPiPower(n, FactoredRational(1, tuple(factors)))


def verify_theorem2(n: int) -> bool:
    return rat_eq(omega_self_intersection(n).rational_part, omega_closed(n).expanded())


# ---- the n-beta example ------------------------------------------------------------


def _indexed(prefix: str, n: int) -> list[LaurentPolynomial]:
    names = [f"{prefix}_{i}" for i in range(n + 1)]
    for name in names:
        declare(name)
    return [monomial(1, {name: 1}) for name in names]


def beta_n_face_sum(n: int) -> RationalFunction:
    """Sum over the proper faces of the n-simplex of prod 1/(a_i - 1)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    a = _indexed("a", n)
    terms = []
    for mask in range((1 << (n + 1)) - 1):
        terms.append(FactoredRational(1, tuple((a[i] - 1, -1) for i in range(n + 1) if mask >> i & 1)))
    return fsum(terms)


def beta_n_simplex_self(n: int) -> RationalFunction:
    """Self-intersection of the loaded simplex: (-1)^n times the face sum.

    The orientation sign is the same one carried by the Terada-n sums; with it
    the n = 1 case is the Beta-function factor (1 - a_0 a_1)/((1 - a_0)(1 - a_1)).
    """
    s = beta_n_face_sum(n)
    return -s if n % 2 else s


def beta_n_simplex_closed(n: int) -> RationalFunction:
    """(1 - prod a_i) / prod (1 - a_i)."""
    a = _indexed("a", n)
    prod = const(1)
    den = const(1)
    for x in a:
        prod = prod * x
        den = den * (1 - x)
    return RationalFunction(1 - prod, den)


def beta_n_form_self(n: int) -> RationalFunction:
    """Sum over the n+1 vertices of the simplex of prod_{j != i} 1/alpha_j."""
    if n < 1:
        raise ValueError("n must be >= 1")
    al = _indexed("alpha", n)
    terms = [FactoredRational(1, tuple((al[j], -1) for j in range(n + 1) if j != i)) for i in range(n + 1)]
    return fsum(terms)


def beta_n_form_closed(n: int) -> RationalFunction:
    """(alpha_0 + ... + alpha_n) / (alpha_0 ... alpha_n)."""
    al = _indexed("alpha", n)
    total, prod = const(0), const(1)
    for x in al:
        total = total + x
        prod = prod * x
    return RationalFunction(total, prod)
