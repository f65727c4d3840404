"""Faces, exponents and adjacency of the Terada-n polytope T = 0 1 ... n n' n''.

A hyperface is coded by a run of consecutive juzu letters.  Runs that contain
the letter n+2 are identified with their complements, so every hyperface has
exactly one representative ``Interval(lo, hi)`` with ``0 <= lo < hi <= n+1``;
the whole run ``0..n+1`` is excluded.  Faces of codimension k are families of
k such intervals that are pairwise disjoint or nested.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from math import comb
from typing import Callable, Iterable, Optional, Sequence

from .ratfun import LaurentPolynomial, RationalFunction, const, monomial

__all__ = [
    "Kind",
    "Interval",
    "LaminarFamily",
    "ExponentAssignment",
    "UNIFORM",
    "Juzu",
    "all_intervals",
    "is_compatible",
    "laminar_families",
    "interior_only",
    "fvector",
    "exponent_of",
    "bracket",
    "angle_bracket",
    "adjacent_sigma",
    "touching_neighbors",
    "neighbor_permutations",
    "non_touching_juzus",
    "juzu_canonical",
    "juzu_of_permutation",
    "format_juzu",
]


class Kind(Enum):
    BOUNDARY0 = "boundary0"
    BOUNDARY_TOP = "boundary_top"
    INTERIOR = "interior"


@dataclass(frozen=True, order=True)
class Interval:
    """The letters ``lo, lo+1, ..., hi`` of the ambient Terada-n juzu."""

    lo: int
    hi: int
    n: int

    def __post_init__(self):
        if not (0 <= self.lo < self.hi <= self.n + 1):
            raise ValueError(f"bad interval ({self.lo},{self.hi}) for n={self.n}")
        if self.lo == 0 and self.hi == self.n + 1:
            raise ValueError("the full interval 0..n+1 is not a hyperface")

    @property
    def size(self) -> int:
        return self.hi - self.lo + 1

    @property
    def kind(self) -> Kind:
        if self.lo == 0:
            return Kind.BOUNDARY0
        if self.hi == self.n + 1:
            return Kind.BOUNDARY_TOP
        return Kind.INTERIOR

    @property
    def is_interior(self) -> bool:
        return self.kind is Kind.INTERIOR

    def letters(self) -> range:
        return range(self.lo, self.hi + 1)

    def contains(self, other: "Interval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def __str__(self):
        return "(" + "".join(_letter(i) for i in self.letters()) + ")"


def _letter(i: int) -> str:
    return str(i) if i < 10 else f"({i})"


def is_compatible(i: Interval, j: Interval) -> bool:
    """Disjoint/include property for a pair."""
    return i.hi < j.lo or j.hi < i.lo or i.contains(j) or j.contains(i)


@dataclass(frozen=True)
class LaminarFamily:
    members: tuple[Interval, ...] = ()

    def __post_init__(self):
        ms = tuple(sorted(set(self.members), key=_canon_key))
        if len(ms) != len(self.members):
            raise ValueError("family members must be distinct")
        for x, y in itertools.combinations(ms, 2):
            if not is_compatible(x, y):
                raise ValueError(f"{x} and {y} are neither disjoint nor nested")
        object.__setattr__(self, "members", ms)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, item) -> bool:
        return item in self.members

    def __str__(self):
        return "∩".join(str(m) for m in self.members) or "T"

    @classmethod
    def of(cls, n: int, *pairs: tuple[int, int]) -> "LaminarFamily":
        return cls(tuple(Interval(lo, hi, n) for lo, hi in pairs))


def _canon_key(i: Interval) -> tuple[int, int]:
    return (i.size, i.lo)


@lru_cache(maxsize=None)
def all_intervals(n: int) -> tuple[Interval, ...]:
    """All hyperface intervals, ordered by size then lower end."""
    if n < 1:
        raise ValueError("n must be >= 1")
    out = [Interval(lo, lo + s - 1, n)
           for s in range(2, n + 3)
           for lo in range(0, n + 3 - s)
           if not (lo == 0 and lo + s - 1 == n + 1)]
    assert len(out) == comb(n + 2, 2) - 1
    return tuple(out)


def interior_only(i: Interval) -> bool:
    return i.is_interior


def laminar_families(n: int, filter: Optional[Callable[[Interval], bool]] = None) -> tuple[LaminarFamily, ...]:
    """Every pairwise-compatible subset of the (filtered) intervals, empty one first."""
    return _laminar_families(n, filter)


@lru_cache(maxsize=None)
def _laminar_families(n: int, filter) -> tuple[LaminarFamily, ...]:
    pool = [i for i in all_intervals(n) if filter is None or filter(i)]
    compat = [[is_compatible(x, y) for y in pool] for x in pool]
    found: list[tuple[int, ...]] = []

    def extend(chosen: list[int], start: int) -> None:
        found.append(tuple(chosen))
        for k in range(start, len(pool)):
            if all(compat[k][c] for c in chosen):
                chosen.append(k)
                extend(chosen, k + 1)
                chosen.pop()

    extend([], 0)
    found.sort(key=lambda idx: (len(idx), idx))
    return tuple(LaminarFamily(tuple(pool[k] for k in idx)) for idx in found)


def fvector(n: int) -> list[int]:
    """Entry k counts the codimension-k faces."""
    counts = [0] * (n + 1)
    for fam in laminar_families(n):
        counts[len(fam)] += 1
    return counts


# ---- exponents --------------------------------------------------------------


@dataclass(frozen=True)
class ExponentAssignment:
    """Which variables carry the exponents along t=0, t=1 and the diagonals.

    ``uniform-g`` gives every diagonal t_i = t_j the exponent g^2.  The
    ``general-3d`` mode (distinct f, g, h on the three diagonals of the cube)
    is only meaningful for n = 3 and is handled by the explicit formula in
    :mod:`twisted_terada.homology`.
    """

    a_var: str = "a"
    b_var: str = "b"
    diag_vars: tuple[str, ...] = ("g",)
    mode: str = "uniform-g"

    def __post_init__(self):
        if self.mode not in ("uniform-g", "general-3d"):
            raise ValueError(f"unknown exponent mode {self.mode!r}")
        if self.mode == "general-3d" and len(self.diag_vars) != 3:
            raise ValueError("general-3d mode needs three diagonal variables (f, g, h)")

    def check_n(self, n: int) -> None:
        if self.mode == "general-3d" and n != 3:
            raise ValueError("general-3d exponents exist only for n = 3")


UNIFORM = ExponentAssignment()


def exponent_of(i: Interval, assign: ExponentAssignment = UNIFORM) -> LaurentPolynomial:
    """Multiplicative exponent along the hyperface ``i``, as a monomial."""
    if assign.mode != "uniform-g":
        raise ValueError("exponent_of only supports the uniform-g assignment")
    k = i.size - 1
    g = assign.diag_vars[0]
    kind = i.kind
    if kind is Kind.BOUNDARY0:
        return monomial(1, {assign.a_var: k, g: k * (k - 1)})
    if kind is Kind.BOUNDARY_TOP:
        return monomial(1, {assign.b_var: k, g: k * (k - 1)})
    return monomial(1, {g: k * (k + 1)})


def bracket(i: Interval, assign: ExponentAssignment = UNIFORM) -> RationalFunction:
    """``[lo..hi] = 1/(e - 1)``."""
    return RationalFunction(1, exponent_of(i, assign) - 1)


def angle_bracket(i: Interval, assign: ExponentAssignment = UNIFORM) -> RationalFunction:
    """``<lo..hi> = -1/(1 - (-1)^q g^C(q+1,2))`` with q = size - 1; interior runs only."""
    if not i.is_interior:
        raise ValueError(f"angle bracket needs an interior interval, got {i}")
    q = i.size - 1
    sign = -1 if q % 2 else 1
    g_pow = monomial(1, {assign.diag_vars[0]: comb(q + 1, 2)})
    return RationalFunction(-1, const(1) - g_pow.scale(sign))


# ---- adjacency ----------------------------------------------------------------


def _apply_reversals(word: Sequence[int], members: Iterable[Interval]) -> tuple[int, ...]:
    w = list(word)
    for m in members:
        letters = set(m.letters())
        pos = [p for p, x in enumerate(w) if x in letters]
        lo, hi = pos[0], pos[-1]
        if hi - lo + 1 != len(letters):
            raise ValueError(f"letters of {m} are not contiguous in {w}")
        w[lo:hi + 1] = w[lo:hi + 1][::-1]
    return tuple(w)


def adjacent_sigma(family: LaminarFamily, n: int, order: Optional[Sequence[Interval]] = None) -> tuple[int, ...]:
    """Word sigma(1)..sigma(n) of the Terada-n touching T along ``family``.

    Each member reverses the block of letters it covers; nested blocks are
    processed innermost first unless ``order`` is given (the result does not
    depend on it).
    """
    for m in family:
        if not m.is_interior:
            raise ValueError(f"adjacency faces use interior intervals only, got {m}")
    members = list(order) if order is not None else sorted(family, key=lambda m: m.size)
    return _apply_reversals(range(1, n + 1), members)


@lru_cache(maxsize=None)
def touching_neighbors(n: int) -> tuple[tuple[tuple[int, ...], LaminarFamily], ...]:
    """``(sigma, face)`` for every nonempty interior face, grouped by sigma."""
    pairs = [(adjacent_sigma(f, n), f) for f in laminar_families(n, interior_only) if len(f)]
    pairs.sort(key=lambda p: p[0])
    return tuple(pairs)


def neighbor_permutations(n: int) -> list[tuple[int, ...]]:
    return sorted({sigma for sigma, _ in touching_neighbors(n)})


# ---- juzus --------------------------------------------------------------------


@dataclass(frozen=True)
class Juzu:
    """A cyclic word up to rotation and reversal; ``word`` is the canonical form."""

    word: tuple[int, ...]
    canonical: bool = True

    def __str__(self):
        return format_juzu(self.word)


def juzu_canonical(word: Sequence[int] | str) -> Juzu:
    """Lexicographically least rotation of the word or of its reversal."""
    if isinstance(word, str):
        word = _parse_juzu(word)
    w = tuple(int(x) for x in word)
    if len(w) < 3 or sorted(w) != list(range(len(w))):
        raise ValueError(f"not a juzu word: {word!r}")
    candidates = []
    for seq in (w, w[::-1]):
        for r in range(len(seq)):
            candidates.append(seq[r:] + seq[:r])
    return Juzu(min(candidates))


def _parse_juzu(text: str) -> list[int]:
    out = []
    i = 0
    while i < len(text):
        if text[i] == "(":
            j = text.index(")", i)
            out.append(int(text[i + 1:j]))
            i = j + 1
        else:
            out.append(int(text[i]))
            i += 1
    return out


def format_juzu(word: Sequence[int]) -> str:
    return "".join(_letter(x) for x in word)


def juzu_of_permutation(sigma: Sequence[int]) -> Juzu:
    n = len(sigma)
    return juzu_canonical((0, *sigma, n + 1, n + 2))


def non_touching_juzus(n: int) -> list[Juzu]:
    """Juzus of the Terada-n's in the S_n orbit that share no face with T."""
    touching = set(neighbor_permutations(n))
    identity = tuple(range(1, n + 1))
    out = [juzu_of_permutation(s) for s in itertools.permutations(identity)
           if s != identity and s not in touching]
    return sorted(out, key=lambda j: j.word)
