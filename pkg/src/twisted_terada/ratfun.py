"""Exact Laurent polynomials and rational functions over the integers.

Variables live in a single process-wide registry; a monomial is stored as the
tuple of its exponents in registry order with trailing zeros trimmed.  Terms
are ordered graded-lexicographically over that registry order, which fixes
display, hashing and the sign normalization of denominators.

No polynomial gcd is ever taken.  Two rational functions are equal when the
cross products of numerators and denominators agree, so unreduced forms are
harmless.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Mapping, Union

__all__ = [
    "LaurentPolynomial",
    "RationalFunction",
    "FactoredRational",
    "NearPoleError",
    "declare",
    "registry",
    "symbols",
    "const",
    "monomial",
    "poly_add",
    "poly_mul",
    "rat_add",
    "rat_mul",
    "rat_neg",
    "rat_inv",
    "rat_eq",
    "rat_eval_complex",
    "expand",
    "fsum",
    "as_rational",
]

VarName = str

_NAMES: list[VarName] = []
_INDEX: dict[VarName, int] = {}

# Main alphabet first so the common monomials have short keys.
for _name in ("a", "b", "g", "f", "h", "c", "q", "x", "alpha", "beta", "gamma"):
    _INDEX[_name] = len(_NAMES)
    _NAMES.append(_name)


class NearPoleError(ArithmeticError):
    """Raised when a numeric evaluation lands too close to a pole."""


def declare(name: VarName) -> int:
    """Register ``name`` (idempotent) and return its slot in the registry."""
    idx = _INDEX.get(name)
    if idx is None:
        if not name or not (name[0].isalpha() and name.replace("_", "").isalnum()):
            raise ValueError(f"invalid variable name {name!r}")
        idx = len(_NAMES)
        _INDEX[name] = idx
        _NAMES.append(name)
    return idx


def registry() -> tuple[VarName, ...]:
    return tuple(_NAMES)


def _trim(key: tuple[int, ...]) -> tuple[int, ...]:
    end = len(key)
    while end and key[end - 1] == 0:
        end -= 1
    return key if end == len(key) else key[:end]


def _key_of(exps: Mapping[VarName, int]) -> tuple[int, ...]:
    slots = {declare(v): e for v, e in exps.items() if e}
    if not slots:
        return ()
    key = [0] * (max(slots) + 1)
    for i, e in slots.items():
        key[i] = e
    return tuple(key)


def _kmul(k1: tuple[int, ...], k2: tuple[int, ...]) -> tuple[int, ...]:
    if len(k1) < len(k2):
        k1, k2 = k2, k1
    if not k2:
        return k1
    head = tuple([x + y for x, y in zip(k1, k2)])
    if len(k1) == len(k2):
        return _trim(head)
    return head + k1[len(k2):]


def _order_key(key: tuple[int, ...]) -> tuple:
    # graded-lex; padding makes keys of different lengths comparable
    return (sum(key), key + (0,) * (len(_NAMES) - len(key)))


Scalar = Union[int, Fraction]


class LaurentPolynomial:
    """Immutable integer polynomial in registered variables, exponents in Z."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[tuple[int, ...], int] | None = None):
        clean: dict[tuple[int, ...], int] = {}
        for key, c in (terms or {}).items():
            if c:
                k = _trim(tuple(key))
                s = clean.get(k, 0) + int(c)
                if s:
                    clean[k] = s
                else:
                    clean.pop(k, None)
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[tuple[int, ...], int]) -> "LaurentPolynomial":
        # caller guarantees trimmed keys and nonzero coefficients
        p = object.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    # ---- inspection -------------------------------------------------------

    @property
    def terms(self) -> dict[tuple[int, ...], int]:
        return dict(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and () in self._terms)

    def constant_value(self) -> int:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self._terms.get((), 0)

    def sorted_terms(self) -> list[tuple[tuple[int, ...], int]]:
        """Terms in canonical order, leading (largest) term first."""
        return sorted(self._terms.items(), key=lambda kv: _order_key(kv[0]), reverse=True)

    def leading_term(self) -> tuple[tuple[int, ...], int]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        return max(self._terms.items(), key=lambda kv: _order_key(kv[0]))

    def content(self) -> int:
        return reduce(math.gcd, self._terms.values(), 0)

    def variables(self) -> set[VarName]:
        used = set()
        for key in self._terms:
            used.update(i for i, e in enumerate(key) if e)
        return {_NAMES[i] for i in used}

    def degree(self, name: VarName) -> int:
        i = _INDEX.get(name)
        if i is None or not self._terms:
            return 0
        return max(k[i] if i < len(k) else 0 for k in self._terms)

    def min_degree(self, name: VarName) -> int:
        i = _INDEX.get(name)
        if i is None or not self._terms:
            return 0
        return min(k[i] if i < len(k) else 0 for k in self._terms)

    # ---- arithmetic -------------------------------------------------------

    @staticmethod
    def _coerce(other) -> "LaurentPolynomial | None":
        if isinstance(other, LaurentPolynomial):
            return other
        if isinstance(other, int):
            return const(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if len(o._terms) > len(self._terms):
            big, small = o._terms, self._terms
        else:
            big, small = self._terms, o._terms
        out = dict(big)
        for k, c in small.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                del out[k]
        return LaurentPolynomial._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial._raw({k: -c for k, c in self._terms.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def scale(self, c: int) -> "LaurentPolynomial":
        if not c:
            return LaurentPolynomial._raw({})
        return LaurentPolynomial._raw({k: v * c for k, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return _poly_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            if not self.is_monomial():
                raise ValueError("negative power of a non-monomial is not a Laurent polynomial")
            ((key, c),) = self._terms.items()
            if c not in (1, -1):
                raise ValueError("negative power needs a unit coefficient")
            return LaurentPolynomial._raw({_trim(tuple(x * e for x in key)): c ** (-e)})
        result = const(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, (LaurentPolynomial, int)):
            return RationalFunction(self, other)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, int):
            return RationalFunction(other, self)
        return NotImplemented

    def inverse_monomial(self) -> "LaurentPolynomial":
        """Inverse of a unit monomial ``±m``."""
        return self ** -1

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._terms == o._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def sort_key(self) -> tuple:
        return tuple((_order_key(k), c) for k, c in self.sorted_terms())

    def exact_div(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        """Divide exactly; raises ArithmeticError when ``other`` does not divide."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if self.is_zero():
            return self
        if other.is_monomial():
            ((key, c),) = other._terms.items()
            if any(v % c for v in self._terms.values()):
                raise ArithmeticError("non-exact division")
            inv = tuple(-x for x in key)
            return LaurentPolynomial._raw({_kmul(k, inv): v // c for k, v in self._terms.items()})
        # shift both into the ordinary polynomial ring, then long-divide
        shift_n = _min_shift(self)
        shift_d = _min_shift(other)
        num = _shift(self, shift_n)
        den = _shift(other, shift_d)
        lead_k, lead_c = den.leading_term()
        quot: dict[tuple[int, ...], int] = {}
        rem = num
        while rem:
            rk, rc = rem.leading_term()
            qk = tuple(x - y for x, y in zip(_pad(rk, len(lead_k)), _pad(lead_k, len(rk))))
            if any(x < 0 for x in qk) or rc % lead_c:
                raise ArithmeticError("non-exact division")
            qk = _trim(qk)
            qc = rc // lead_c
            quot[qk] = qc
            rem = rem - LaurentPolynomial._raw({qk: qc}) * den
        q = LaurentPolynomial._raw(quot)
        back = tuple(x - y for x, y in zip(_pad(shift_n, len(shift_d)), _pad(shift_d, len(shift_n))))
        return _shift(q, tuple(-x for x in back))

    # ---- evaluation / substitution -----------------------------------------

    def evaluate(self, assignment: Mapping[VarName, complex]) -> complex:
        value, _ = self._evaluate_with_scale(assignment)
        return value

    def _evaluate_with_scale(self, assignment: Mapping[VarName, complex]) -> tuple[complex, float]:
        used = {i for k in self._terms for i, e in enumerate(k) if e}
        point = {}
        for i in used:
            name = _NAMES[i]
            if name not in assignment:
                raise KeyError(f"no value assigned to variable {name!r}")
            point[i] = complex(assignment[name])
        powers: dict[tuple[int, int], complex] = {}
        total = 0j
        scale = 0.0
        # accumulate from the smallest terms up to limit cancellation noise
        for key, c in sorted(self._terms.items(), key=lambda kv: _order_key(kv[0])):
            term = complex(c)
            for i, e in enumerate(key):
                if e:
                    pw = powers.get((i, e))
                    if pw is None:
                        pw = point[i] ** e
                        powers[(i, e)] = pw
                    term *= pw
            total += term
            scale += abs(term)
        return total, scale

    def subs(self, mapping: Mapping[VarName, "LaurentPolynomial | RationalFunction | int"]) -> "RationalFunction":
        """Substitute variables by polynomials or rational functions."""
        idx_map = {_INDEX[name]: as_rational(val) for name, val in mapping.items() if name in _INDEX}
        if not idx_map:
            return RationalFunction(self)
        if all(v.is_polynomial() for v in idx_map.values()):
            try:
                return RationalFunction(self._subs_poly({i: v.num for i, v in idx_map.items()}))
            except ValueError:
                pass  # negative power of a non-monomial replacement
        total = RationalFunction(0)
        for key, c in self._terms.items():
            rest = _trim(tuple(0 if i in idx_map else e for i, e in enumerate(key)))
            term = RationalFunction(LaurentPolynomial._raw({rest: c}))
            for i, e in enumerate(key):
                if e and i in idx_map:
                    term = term * idx_map[i] ** e
            total = total + term
        return total

    def _subs_poly(self, idx_map: dict[int, "LaurentPolynomial"]) -> "LaurentPolynomial":
        cache: dict[tuple[int, int], LaurentPolynomial] = {}
        out = LaurentPolynomial._raw({})
        for key, c in self._terms.items():
            rest = _trim(tuple(0 if i in idx_map else e for i, e in enumerate(key)))
            term = LaurentPolynomial._raw({rest: c})
            for i, e in enumerate(key):
                if e and i in idx_map:
                    pw = cache.get((i, e))
                    if pw is None:
                        pw = idx_map[i] ** e
                        cache[(i, e)] = pw
                    term = term * pw
            out = out + term
        return out

    # ---- display / serialization -------------------------------------------

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for key, c in self.sorted_terms():
            factors = []
            for i, e in enumerate(key):
                if e == 1:
                    factors.append(_NAMES[i])
                elif e:
                    factors.append(f"{_NAMES[i]}^{e}")
            mono = "*".join(factors)
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    def __repr__(self):
        return f"LaurentPolynomial({self})"

    def to_json(self) -> list[dict]:
        out = []
        for key, c in self.sorted_terms():
            out.append({"coeff": str(c), "exps": {_NAMES[i]: e for i, e in enumerate(key) if e}})
        return out

    @classmethod
    def from_json(cls, data: list[dict]) -> "LaurentPolynomial":
        terms: dict[tuple[int, ...], int] = {}
        for item in data:
            key = _key_of(item["exps"])
            terms[key] = terms.get(key, 0) + int(item["coeff"])
        return cls(terms)


def _pad(key: tuple[int, ...], n: int) -> tuple[int, ...]:
    return key + (0,) * (n - len(key)) if len(key) < n else key


def _min_shift(p: LaurentPolynomial) -> tuple[int, ...]:
    width = max((len(k) for k in p._terms), default=0)
    mins = [0] * width
    for k in p._terms:
        for i, e in enumerate(k):
            if e < mins[i]:
                mins[i] = e
    return tuple(-m for m in mins)


def _shift(p: LaurentPolynomial, by: tuple[int, ...]) -> LaurentPolynomial:
    by = _trim(by)
    if not by:
        return p
    return LaurentPolynomial._raw({_kmul(k, by): c for k, c in p._terms.items()})


# Products larger than this many term pairs go through Kronecker substitution.
_KRONECKER_THRESHOLD = 4000


def _poly_mul(p: LaurentPolynomial, q: LaurentPolynomial) -> LaurentPolynomial:
    pt, qt = p._terms, q._terms
    if not pt or not qt:
        return LaurentPolynomial._raw({})
    if len(pt) < len(qt):
        pt, qt = qt, pt
    if len(qt) == 1:
        ((k2, c2),) = qt.items()
        if not k2:
            return LaurentPolynomial._raw({k: c * c2 for k, c in pt.items()})
        return LaurentPolynomial._raw({_kmul(k, k2): c * c2 for k, c in pt.items()})
    if len(pt) * len(qt) > _KRONECKER_THRESHOLD:
        return _kronecker_mul(pt, qt)
    out: dict[tuple[int, ...], int] = {}
    get = out.get
    for k2, c2 in qt.items():
        for k1, c1 in pt.items():
            k = _kmul(k1, k2)
            out[k] = get(k, 0) + c1 * c2
    return LaurentPolynomial._raw({k: c for k, c in out.items() if c})


def _kronecker_mul(pt: dict, qt: dict) -> LaurentPolynomial:
    """Multiply by packing both operands into big integers.

    Exponent vectors are flattened to one index with mixed radix wide enough
    for the product, then coefficients are packed into fixed-width signed
    digits.  The digit width bounds every product coefficient, so unpacking
    the integer product recovers the polynomial product exactly.
    """
    width = max(max(len(k) for k in pt), max(len(k) for k in qt))
    lo_p, hi_p = _ranges(pt, width)
    lo_q, hi_q = _ranges(qt, width)
    lo = [a + b for a, b in zip(lo_p, lo_q)]
    spans = [hp + hq - l + 1 for hp, hq, l in zip(hi_p, hi_q, lo)]
    strides = []
    s = 1
    for span in spans:
        strides.append(s)
        s *= span
    total_slots = s

    bound = max(map(abs, pt.values())) * max(map(abs, qt.values())) * min(len(pt), len(qt))
    digit_bits = bound.bit_length() + 2
    digit_bytes = (digit_bits + 7) // 8
    digit_bits = 8 * digit_bytes

    def pack(terms: dict, lows: list[int]) -> int:
        pos = bytearray(digit_bytes * total_slots)
        neg = bytearray(digit_bytes * total_slots)
        base = -sum(l * st for l, st in zip(lows, strides))
        for key, c in terms.items():
            idx = base
            for i, e in enumerate(key):
                idx += e * strides[i]
            off = idx * digit_bytes
            if c > 0:
                pos[off:off + digit_bytes] = c.to_bytes(digit_bytes, "little")
            else:
                neg[off:off + digit_bytes] = (-c).to_bytes(digit_bytes, "little")
        return int.from_bytes(pos, "little") - int.from_bytes(neg, "little")

    a = pack(pt, lo_p)
    b = pack(qt, lo_q)
    prod = a * b
    nbytes = digit_bytes * (total_slots + 1)
    raw = prod.to_bytes(nbytes, "little", signed=True)
    half = 1 << (digit_bits - 1)
    full = 1 << digit_bits
    out: dict[tuple[int, ...], int] = {}
    carry = 0
    for idx in range(total_slots):
        off = idx * digit_bytes
        d = int.from_bytes(raw[off:off + digit_bytes], "little") + carry
        if d >= half:
            d -= full
            carry = 1
        else:
            carry = 0
        if d:
            rem = idx
            key = []
            for i in range(width - 1, -1, -1):
                e, rem = divmod(rem, strides[i])
                key.append(e + lo[i])
            key.reverse()
            out[_trim(tuple(key))] = d
    return LaurentPolynomial._raw(out)


def _ranges(terms: dict, width: int) -> tuple[list[int], list[int]]:
    lo = [0] * width
    hi = [0] * width
    first = True
    for key in terms:
        k = _pad(key, width)
        if first:
            lo = list(k)
            hi = list(k)
            first = False
            continue
        for i, e in enumerate(k):
            if e < lo[i]:
                lo[i] = e
            elif e > hi[i]:
                hi[i] = e
    return lo, hi


def const(c: int) -> LaurentPolynomial:
    return LaurentPolynomial._raw({(): int(c)} if c else {})


def monomial(coeff: int = 1, exps: Mapping[VarName, int] | None = None, **kw: int) -> LaurentPolynomial:
    """``monomial(3, a=1, g=-2)`` is ``3*a*g^-2``."""
    merged = dict(exps or {})
    merged.update(kw)
    if not coeff:
        return LaurentPolynomial._raw({})
    return LaurentPolynomial._raw({_key_of(merged): int(coeff)})


def symbols(names: str) -> tuple[LaurentPolynomial, ...]:
    return tuple(monomial(1, {n: 1}) for n in names.replace(",", " ").split())


# ---------------------------------------------------------------------------
# Rational functions
# ---------------------------------------------------------------------------


class RationalFunction:
    """``num/den`` with den != 0, gcd of all coefficients 1, den leading coefficient > 0.

    A monomial denominator is folded into the numerator (Laurent ring), so a
    Laurent polynomial always has denominator 1.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        num = _as_poly(num)
        den = _as_poly(den)
        if den.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        if num.is_zero():
            self.num = num
            self.den = const(1)
            return
        if den.is_monomial():
            ((key, c),) = den._terms.items()
            inv = tuple(-x for x in key)
            num = LaurentPolynomial._raw({_kmul(k, inv): v for k, v in num._terms.items()}) if key else num
            den = const(c)
        g = math.gcd(num.content(), den.content())
        _, lead = den.leading_term()
        if lead < 0:
            g = -g
        if g != 1:
            num = LaurentPolynomial._raw({k: v // g for k, v in num._terms.items()})
            den = LaurentPolynomial._raw({k: v // g for k, v in den._terms.items()})
        self.num = num
        self.den = den

    @classmethod
    def _trusted(cls, num: LaurentPolynomial, den: LaurentPolynomial) -> "RationalFunction":
        r = object.__new__(cls)
        r.num = num
        r.den = den
        return r

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_constant() and self.den.constant_value() == 1

    def normalized(self) -> "RationalFunction":
        return RationalFunction(self.num, self.den)

    def __add__(self, other):
        o = _coerce_rat(other)
        if o is None:
            return NotImplemented
        if o.num.is_zero():
            return self
        if self.num.is_zero():
            return o
        if self.den == o.den:
            return RationalFunction(self.num + o.num, self.den)
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction._trusted(-self.num, self.den)

    def __sub__(self, other):
        o = _coerce_rat(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = _coerce_rat(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = _coerce_rat(other)
        if o is None:
            return NotImplemented
        if self.num.is_zero() or o.num.is_zero():
            return RationalFunction(0)
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if self.num.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.den, self.num)

    def __truediv__(self, other):
        o = _coerce_rat(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = _coerce_rat(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        return RationalFunction(self.num ** e, self.den ** e)

    def __eq__(self, other):
        o = _coerce_rat(other)
        if o is None:
            return NotImplemented
        return rat_eq(self, o)

    __hash__ = None  # equality is by cross-multiplication, not structure

    def subs(self, mapping) -> "RationalFunction":
        return self.num.subs(mapping) / self.den.subs(mapping)

    def evaluate(self, assignment: Mapping[VarName, complex]) -> complex:
        return rat_eval_complex(self, assignment)

    def variables(self) -> set[VarName]:
        return self.num.variables() | self.den.variables()

    def __str__(self):
        if self.is_polynomial():
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"RationalFunction({self})"

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, data: Mapping) -> "RationalFunction":
        return cls(LaurentPolynomial.from_json(data["num"]), LaurentPolynomial.from_json(data["den"]))


def _as_poly(x) -> LaurentPolynomial:
    if isinstance(x, LaurentPolynomial):
        return x
    if isinstance(x, int):
        return const(x)
    raise TypeError(f"cannot use {type(x).__name__} as a polynomial")


def _coerce_rat(x) -> RationalFunction | None:
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, (LaurentPolynomial, int)):
        return RationalFunction(x)
    if isinstance(x, Fraction):
        return RationalFunction(x.numerator, x.denominator)
    return None


def as_rational(x) -> RationalFunction:
    r = _coerce_rat(x)
    if r is None:
        if isinstance(x, FactoredRational):
            return x.expand()
        raise TypeError(f"cannot use {type(x).__name__} as a rational function")
    return r


# ---- spec-level operation names -------------------------------------------


def poly_add(p: LaurentPolynomial, q: LaurentPolynomial) -> LaurentPolynomial:
    return p + q


def poly_mul(p: LaurentPolynomial, q: LaurentPolynomial) -> LaurentPolynomial:
    return p * q


def rat_add(r, s) -> RationalFunction:
    return as_rational(r) + as_rational(s)


def rat_mul(r, s) -> RationalFunction:
    return as_rational(r) * as_rational(s)


def rat_neg(r) -> RationalFunction:
    return -as_rational(r)


def rat_inv(r) -> RationalFunction:
    return as_rational(r).inverse()


def rat_eq(r, s) -> bool:
    """Exact equality by cross-multiplication."""
    r = as_rational(r)
    s = as_rational(s)
    if r.den == s.den:
        return r.num == s.num
    if r.num.is_zero() or s.num.is_zero():
        return r.num.is_zero() and s.num.is_zero()
    return r.num * s.den == s.num * r.den


# A denominator smaller than this fraction of its own term magnitudes is a pole.
NEAR_POLE_RTOL = 1e-12


def rat_eval_complex(r, assignment: Mapping[VarName, complex]) -> complex:
    r = as_rational(r)
    num, _ = r.num._evaluate_with_scale(assignment)
    den, scale = r.den._evaluate_with_scale(assignment)
    if abs(den) < NEAR_POLE_RTOL * scale:
        raise NearPoleError("near-pole evaluation")
    return num / den


# ---------------------------------------------------------------------------
# Factored products
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FactoredRational:
    """``constant * prod(factor ** multiplicity)`` kept unexpanded."""

    constant: Fraction = Fraction(1)
    factors: tuple[tuple[LaurentPolynomial, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "constant", Fraction(self.constant))
        merged: dict[LaurentPolynomial, int] = {}
        order: list[LaurentPolynomial] = []
        for f, m in self.factors:
            f = _as_poly(f)
            if f.is_zero() and m < 0:
                raise ZeroDivisionError("division by zero rational function")
            if f not in merged:
                order.append(f)
                merged[f] = 0
            merged[f] += int(m)
        cleaned = tuple((f, merged[f]) for f in order if merged[f])
        object.__setattr__(self, "factors", cleaned)

    def __mul__(self, other):
        if isinstance(other, FactoredRational):
            return FactoredRational(self.constant * other.constant, self.factors + other.factors)
        if isinstance(other, (int, Fraction)):
            return FactoredRational(self.constant * other, self.factors)
        if isinstance(other, LaurentPolynomial):
            return FactoredRational(self.constant, self.factors + ((other, 1),))
        return NotImplemented

    __rmul__ = __mul__

    def __neg__(self):
        return FactoredRational(-self.constant, self.factors)

    def inverse(self) -> "FactoredRational":
        if not self.constant:
            raise ZeroDivisionError("division by zero rational function")
        return FactoredRational(1 / self.constant, tuple((f, -m) for f, m in self.factors))

    def __truediv__(self, other):
        if isinstance(other, FactoredRational):
            return self * other.inverse()
        if isinstance(other, (int, Fraction)):
            return FactoredRational(self.constant / other, self.factors)
        return NotImplemented

    def __pow__(self, e: int):
        return FactoredRational(self.constant ** e, tuple((f, m * e) for f, m in self.factors))

    def is_zero(self) -> bool:
        return self.constant == 0 or any(f.is_zero() for f, m in self.factors if m > 0)

    def expand(self) -> RationalFunction:
        return expand(self)

    def evaluate(self, assignment: Mapping[VarName, complex]) -> complex:
        """Factor-by-factor numeric value."""
        value = complex(self.constant)
        for f, m in self.factors:
            v, scale = f._evaluate_with_scale(assignment)
            if m < 0 and abs(v) < NEAR_POLE_RTOL * max(scale, 1.0):
                raise NearPoleError("near-pole evaluation")
            value *= v ** m
        return value

    def __str__(self):
        def side(fs):
            return " * ".join(f"({f})" + (f"^{m}" if m != 1 else "") if len(f) > 1
                              else str(f) + (f"^{m}" if m != 1 else "") for f, m in fs)

        top = [(f, m) for f, m in self.factors if m > 0]
        bottom = [(f, -m) for f, m in self.factors if m < 0]
        c = self.constant
        head = [] if c == 1 and top else ["-" if c == -1 and top else str(c)]
        num = " * ".join(head + ([side(top)] if top else []))
        num = num.replace("- * ", "-")
        if not bottom:
            return num
        den = side(bottom)
        return f"{num} / ({den})" if len(bottom) > 1 else f"{num} / {den}"

    def to_json(self) -> dict:
        return {
            "constant": str(self.constant),
            "factors": [[str(f), m] for f, m in self.factors],
            "factor_terms": [[f.to_json(), m] for f, m in self.factors],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "FactoredRational":
        return cls(Fraction(data["constant"]),
                   tuple((LaurentPolynomial.from_json(t), m) for t, m in data["factor_terms"]))


def expand(f: FactoredRational) -> RationalFunction:
    num = const(f.constant.numerator)
    den = const(f.constant.denominator)
    for p, m in f.factors:
        if m > 0:
            num = num * p ** m
        else:
            den = den * p ** (-m)
    return RationalFunction(num, den)


# ---------------------------------------------------------------------------
# Summation over a common factored denominator
# ---------------------------------------------------------------------------


@dataclass
class _Node:
    num: LaurentPolynomial
    den_int: int
    den: Counter  # factor polynomial -> positive multiplicity


def _node_of(term) -> _Node:
    if isinstance(term, FactoredRational):
        num = const(term.constant.numerator)
        den_int = term.constant.denominator
        den: Counter = Counter()
        for f, m in term.factors:
            if m > 0:
                num = num * f ** m
            elif f.is_monomial():
                ((key, c),) = f._terms.items()
                num = num * LaurentPolynomial._raw({tuple(x * m for x in key): 1}) if key else num
                den_int *= abs(c) ** (-m)
                if c < 0 and m % 2:
                    num = -num
            else:
                den[f] += -m
        return _Node(num, den_int, den)
    r = as_rational(term)
    if r.den.is_constant():
        return _Node(r.num, r.den.constant_value(), Counter())
    return _Node(r.num, 1, Counter({r.den: 1}))


def _merge(x: _Node, y: _Node) -> _Node:
    den = x.den | y.den  # multiset union = lcm on identical factors
    m = x.den_int * y.den_int // math.gcd(x.den_int, y.den_int)
    parts = []
    for node in (x, y):
        cof = node.num.scale(m // node.den_int)
        for f, k in den.items():
            extra = k - node.den.get(f, 0)
            if extra:
                cof = cof * f ** extra
        parts.append(cof)
    return _Node(parts[0] + parts[1], m, den)


def fsum(terms: Iterable) -> RationalFunction:
    """Exact sum of many fractions whose denominators share factors.

    Terms with identical factored denominators are added first; the groups are
    then combined pairwise over the least common multiple of their factor
    multisets.  Factors are matched structurally, so no gcd is needed.
    """
    buckets: dict[tuple, _Node] = {}
    for t in terms:
        node = _node_of(t)
        if node.num.is_zero():
            continue
        key = (node.den_int, frozenset(node.den.items()))
        held = buckets.get(key)
        if held is None:
            buckets[key] = node
        else:
            held.num = held.num + node.num
    nodes = [buckets[k] for k in sorted(buckets, key=_bucket_order)]
    if not nodes:
        return RationalFunction(0)
    while len(nodes) > 1:
        nodes = [_merge(nodes[i], nodes[i + 1]) if i + 1 < len(nodes) else nodes[i]
                 for i in range(0, len(nodes), 2)]
    node = nodes[0]
    den = const(node.den_int)
    for f, k in sorted(node.den.items(), key=lambda fk: fk[0].sort_key()):
        den = den * f ** k
    return RationalFunction(node.num, den)


def _bucket_order(key: tuple) -> tuple:
    den_int, items = key
    return (len(items), sorted((f.sort_key(), m) for f, m in items), den_int)
