"""Numeric check of Sel_n(p) Sel_n(-p) = (J_n)(omega . omega) through Gamma values."""

from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass, field

from .cohomology import omega_closed
from .homology import jn_closed
from .ratfun import NearPoleError

__all__ = [
    "GammaPoleError",
    "PoleMarginError",
    "SelbergParams",
    "gamma_complex",
    "selberg_closed",
    "theorem1_numeric",
    "theorem1_numeric_expanded",
    "theorem2_numeric",
    "reciprocity_residual",
    "random_params",
    "ReciprocityReport",
    "reciprocity_report",
]

DEFAULT_MARGIN = 1e-3
GAMMA_POLE_TOL = 1e-9

_LANCZOS_G = 7
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


class GammaPoleError(ValueError):
    pass


class PoleMarginError(ValueError):
    pass


def _near_nonpositive_int(z: complex, tol: float) -> bool:
    r = round(z.real)
    return r <= 0 and abs(z - r) < tol


def gamma_complex(z: complex) -> complex:
    """Gamma function by the Lanczos series, with reflection below Re z = 1/2."""
    z = complex(z)
    if _near_nonpositive_int(z, GAMMA_POLE_TOL):
        raise GammaPoleError(f"gamma pole at {z}")
    if z.real < 0.5:
        return cmath.pi / (cmath.sin(cmath.pi * z) * gamma_complex(1 - z))
    z -= 1
    x = _LANCZOS[0]
    for i in range(1, len(_LANCZOS)):
        x += _LANCZOS[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    return math.sqrt(2 * math.pi) * cmath.exp((z + 0.5) * cmath.log(t) - t) * x


@dataclass(frozen=True)
class SelbergParams:
    n: int
    alpha: float
    beta: float
    gamma: float
    margin: float = field(default=DEFAULT_MARGIN, compare=False)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        for label, v in self.gamma_arguments():
            d = _dist_to_nonpositive_int(v)
            if d < self.margin:
                raise PoleMarginError(f"{label} = {v!r} lies within {d:.3g} of a pole (margin {self.margin})")

    def gamma_arguments(self) -> list[tuple[str, float]]:
        n, al, be, ga = self.n, self.alpha, self.beta, self.gamma
        out = []
        for j in range(1, n + 1):
            out.append((f"alpha+{j - 1}gamma", al + (j - 1) * ga))
            out.append((f"beta+{j - 1}gamma", be + (j - 1) * ga))
            out.append((f"{j}gamma+1", j * ga + 1))
            out.append((f"alpha+beta+{n + j - 2}gamma", al + be + (n + j - 2) * ga))
        return out

    def negated(self) -> "SelbergParams":
        return SelbergParams(self.n, -self.alpha, -self.beta, -self.gamma, self.margin)

    @property
    def values(self) -> list[float]:
        return [self.alpha, self.beta, self.gamma]


def _dist_to_nonpositive_int(v: float) -> float:
    if v > 0.5:
        return math.inf
    return abs(v - round(v))


def selberg_closed(p: SelbergParams) -> complex:
    """prod_j G(alpha+(j-1)gamma) G(beta+(j-1)gamma) G(j gamma+1) / (G(alpha+beta+(n+j-2)gamma) G(gamma+1))."""
    n, al, be, ga = p.n, p.alpha, p.beta, p.gamma
    out = complex(1)
    for j in range(1, n + 1):
        out *= gamma_complex(al + (j - 1) * ga)
        out *= gamma_complex(be + (j - 1) * ga)
        out *= gamma_complex(j * ga + 1)
        out /= gamma_complex(al + be + (n + j - 2) * ga)
        out /= gamma_complex(ga + 1)
    return out


def _multiplicative(p: SelbergParams) -> dict[str, complex]:
    return {v: cmath.exp(2j * cmath.pi * x) for v, x in zip("abg", (p.alpha, p.beta, p.gamma))}


def theorem1_numeric(p: SelbergParams) -> complex:
    """J_n at a = e^(2 pi i alpha), b = e^(2 pi i beta), g = e^(2 pi i gamma), factor by factor."""
    return jn_closed(p.n).evaluate(_multiplicative(p))


def theorem1_numeric_expanded(p: SelbergParams) -> complex:
    """Same value through the expanded rational function; used to cross-check the factored path."""
    from .ratfun import rat_eval_complex

    return rat_eval_complex(jn_closed(p.n).expand(), _multiplicative(p))


def theorem2_numeric(p: SelbergParams) -> complex:
    """(2 pi i)^n times the real product of Theorem 2."""
    t = omega_closed(p.n)
    value = t.rational_part.evaluate({"alpha": p.alpha, "beta": p.beta, "gamma": p.gamma})
    return (2j * cmath.pi) ** t.power * value


def reciprocity_residual(p: SelbergParams) -> float:
    """|Sel(p) Sel(-p) / (J_n(p) . omega(p)) - 1|."""
    lhs = selberg_closed(p) * selberg_closed(p.negated())
    rhs = theorem1_numeric(p) * theorem2_numeric(p)
    if rhs == 0 or not cmath.isfinite(rhs):
        raise NearPoleError("reciprocity denominator underflow")
    return abs(lhs / rhs - 1)


def _valid(n: int, al: float, be: float, ga: float, margin: float) -> bool:
    try:
        p = SelbergParams(n, al, be, ga, margin)
        p.negated()
    except PoleMarginError:
        return False
    # the factors 1 - g^j of J_n vanish when j gamma is an integer
    return all(abs(j * ga - round(j * ga)) >= margin for j in range(1, n + 1))


def random_params(n: int, seed: int, draws: int, lo: float = 0.05, hi: float = 0.45,
                  margin: float = 1e-2) -> list[SelbergParams]:
    """Seeded uniform draws in (lo, hi)^3, rejecting those too close to a pole."""
    rng = random.Random(seed)
    out: list[SelbergParams] = []
    while len(out) < draws:
        al, be, ga = (rng.uniform(lo, hi) for _ in range(3))
        if _valid(n, al, be, ga, margin):
            out.append(SelbergParams(n, al, be, ga, margin))
    return out


@dataclass(frozen=True)
class ReciprocityReport:
    n: int
    params: list[float]
    residual: float
    seed: int | None

    def to_json(self) -> dict:
        return {"n": self.n, "params": self.params, "residual": self.residual, "seed": self.seed}


def reciprocity_report(p: SelbergParams, seed: int | None = None) -> ReciprocityReport:
    return ReciprocityReport(p.n, p.values, reciprocity_residual(p), seed)
