"""q-analogues and finite verification of the q-series identities in use.

Every identity is checked for one fixed ``n`` at a time as an exact equality of
rational functions; nothing here samples numerically.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, factorial

from .ratfun import (
    FactoredRational,
    LaurentPolynomial,
    RationalFunction,
    as_rational,
    const,
    declare,
    fsum,
    monomial,
    rat_eq,
)

__all__ = [
    "QContext",
    "G",
    "Q",
    "gauss_bracket",
    "q_factorial",
    "q_binom",
    "q_binom_pascal",
    "q_pochhammer",
    "q_pochhammer_factored",
    "verify_g_binomial_alternating",
    "phi21_finite",
    "verify_q_chu_vandermonde",
    "verify_reversal_identity",
    "rising_factorial",
    "verify_classical_chu_vandermonde",
]


@dataclass(frozen=True)
class QContext:
    base: str = "g"

    def __post_init__(self):
        declare(self.base)

    def power(self, e: int) -> LaurentPolynomial:
        return monomial(1, {self.base: e})


G = QContext("g")
Q = QContext("q")


def gauss_bracket(n: int, ctx: QContext = G) -> LaurentPolynomial:
    """``[n] = 1 + g + ... + g^(n-1)``."""
    if n <= 0:
        raise ValueError(f"gauss_bracket needs n >= 1, got {n}")
    return LaurentPolynomial({((0,) * _slot(ctx) + (i,)): 1 for i in range(n)})


def _slot(ctx: QContext) -> int:
    return declare(ctx.base)


def q_factorial(n: int, ctx: QContext = G) -> LaurentPolynomial:
    if n < 0:
        raise ValueError(f"q_factorial needs n >= 0, got {n}")
    out = const(1)
    for j in range(1, n + 1):
        out = out * gauss_bracket(j, ctx)
    return out


def q_binom(n: int, m: int, ctx: QContext = G) -> LaurentPolynomial:
    """Gaussian binomial by exact division of q-factorials."""
    if not 0 <= m <= n:
        raise ValueError(f"q_binom needs 0 <= m <= n, got ({n}, {m})")
    # exact_div raises ArithmeticError if the quotient is not a polynomial
    return q_factorial(n, ctx).exact_div(q_factorial(m, ctx) * q_factorial(n - m, ctx))


def q_binom_pascal(n: int, m: int, ctx: QContext = G) -> LaurentPolynomial:
    """Gaussian binomial from the Pascal-type recursion; an independent oracle."""
    if not 0 <= m <= n:
        raise ValueError(f"q_binom needs 0 <= m <= n, got ({n}, {m})")
    row = [const(1)]
    for k in range(1, n + 1):
        nxt = [const(1)]
        for j in range(1, k):
            nxt.append(row[j - 1] + ctx.power(j) * row[j])
        nxt.append(const(1))
        row = nxt
    return row[m]


def q_pochhammer_factored(x, k: int, ctx: QContext = G) -> FactoredRational:
    """``(x; g)_k`` as a product of its k linear-in-x factors."""
    if k < 0:
        raise ValueError(f"q_pochhammer needs k >= 0, got {k}")
    x = as_rational(x)
    factors = []
    for i in range(k):
        # 1 - x g^i = (den - num g^i) / den
        factors.append((x.den - x.num * ctx.power(i), 1))
        if not x.den.is_constant():
            factors.append((x.den, -1))
    if x.den.is_constant() and x.den.constant_value() != 1:
        return FactoredRational(1, tuple(factors)) / x.den.constant_value() ** k
    return FactoredRational(1, tuple(factors))


def q_pochhammer(x, k: int, ctx: QContext = G) -> RationalFunction:
    """``(x; g)_k = (1 - x)(1 - x g) ... (1 - x g^(k-1))``."""
    return q_pochhammer_factored(x, k, ctx).expand()


def verify_g_binomial_alternating(n: int, ctx: QContext = G) -> bool:
    """sum_k [n k] g^C(k,2) (-1)^k vanishes identically."""
    if n < 1:
        raise ValueError("n must be >= 1")
    total = const(0)
    for k in range(n + 1):
        term = q_binom(n, k, ctx) * ctx.power(comb(k, 2))
        total = total + (term if k % 2 == 0 else -term)
    return total.is_zero()


def _phi21_terms(n: int, b, c, x, ctx: QContext):
    b, c, x = as_rational(b), as_rational(c), as_rational(x)
    top = ctx.power(-n)
    for i in range(n + 1):
        term = (q_pochhammer_factored(top, i, ctx)
                * q_pochhammer_factored(b, i, ctx)
                / q_pochhammer_factored(ctx.power(1), i, ctx)
                / q_pochhammer_factored(c, i, ctx))
        term = term * FactoredRational(1, ((x.num, i), (x.den, -i)))
        yield term


def phi21_finite(n: int, b, c, x, ctx: QContext = Q) -> RationalFunction:
    """Terminating 2phi1(q^-n, b; c; q, x) = sum_i (q^-n)_i (b)_i / ((q)_i (c)_i) x^i."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return fsum(_phi21_terms(n, b, c, x, ctx))


def _var(name: str) -> LaurentPolynomial:
    return monomial(1, {name: 1})


def verify_q_chu_vandermonde(n: int, ctx: QContext = Q) -> bool:
    """Both terminating q-Chu-Vandermonde sums, in symbols b, c and the base."""
    b, c = _var("b"), _var("c")
    c_over_b = c * b ** -1
    ratio = q_pochhammer_factored(c_over_b, n, ctx) / q_pochhammer_factored(c, n, ctx)
    at_q = phi21_finite(n, b, c, ctx.power(1), ctx)
    reversed_form = (ratio * FactoredRational(1, ((b, n),))).expand()
    at_shift = phi21_finite(n, b, c, c_over_b * ctx.power(n), ctx)
    return rat_eq(at_q, reversed_form) and rat_eq(at_shift, ratio.expand())


def verify_reversal_identity(n: int, ctx: QContext = Q) -> bool:
    """Reversing the terminating sum, in symbols b, c, x and the base.

    The power of the base in front is -C(n+1, 2).
    """
    b, c, x = _var("b"), _var("c"), _var("x")
    lhs = phi21_finite(n, b, c, x, ctx)
    b2 = c ** -1 * ctx.power(1 - n)
    c2 = b ** -1 * ctx.power(1 - n)
    x2 = c * b ** -1 * ctx.power(n + 1) * x ** -1
    inner = phi21_finite(n, b2, c2, x2, ctx)
    prefactor = (FactoredRational((-1) ** n, ((ctx.power(-comb(n + 1, 2)), 1), (x, n)))
                 * q_pochhammer_factored(b, n, ctx)
                 / q_pochhammer_factored(c, n, ctx)).expand()
    return rat_eq(lhs, prefactor * inner)


def rising_factorial(x, n: int) -> RationalFunction:
    """``x (x + 1) ... (x + n - 1)``."""
    if n < 0:
        raise ValueError("n must be >= 0")
    x = as_rational(x)
    out = RationalFunction(1)
    for i in range(n):
        out = out * (x + i)
    return out


def verify_classical_chu_vandermonde(n: int) -> bool:
    """sum_k (-n)_k (beta)_k / (k! (gamma)_k) == (gamma - beta)_n / (gamma)_n."""
    beta, gamma = _var("beta"), _var("gamma")
    terms = []
    for k in range(n + 1):
        num = rising_factorial(-n, k) * rising_factorial(beta, k)
        den = rising_factorial(gamma, k) * factorial(k)
        terms.append(num / den)
    lhs = fsum(terms)
    rhs = rising_factorial(gamma - beta, n) / rising_factorial(gamma, n)
    return rat_eq(lhs, rhs)
