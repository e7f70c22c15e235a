"""
Exact Laurent polynomials in one variable ``v`` with integer coefficients.

Everything downstream (Hecke algebra coefficients, KL polynomials,
R-polynomials, structure constants) lives in Z[v, v^-1].  Coefficients are
Python ints, so there is no overflow and no floating point anywhere.

    >>> v = LaurentPoly.v()
    >>> (v + v**-1) * (v - v**-1)
    LaurentPoly({-2: -1, 2: 1})
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Iterable, Mapping


class InexactDivision(ArithmeticError):
    """Raised when a Laurent polynomial is not divisible by another."""


class LaurentPoly:
    """Immutable sparse Laurent polynomial: exponent -> nonzero coefficient."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | None = None):
        if terms:
            clean = {}
            for e, c in terms.items():
                if c:
                    clean[int(e)] = int(c)
            self._terms = clean
        else:
            self._terms = {}
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> LaurentPoly:
        # caller guarantees no zero coefficients
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def v(cls) -> LaurentPoly:
        return cls._raw({1: 1})

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1) -> LaurentPoly:
        if not coeff:
            return ZERO
        return cls._raw({exponent: coeff})

    @classmethod
    def const(cls, c: int) -> LaurentPoly:
        return cls.monomial(0, c)

    @classmethod
    def coerce(cls, other) -> LaurentPoly:
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return cls.const(other)
        raise TypeError(f"cannot coerce {type(other).__name__} to LaurentPoly")

    # -- inspection ---------------------------------------------------------

    def terms(self) -> list[tuple[int, int]]:
        """(exponent, coefficient) pairs in increasing exponent order."""
        return sorted(self._terms.items())

    def coeff(self, exponent: int) -> int:
        return self._terms.get(exponent, 0)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def degree(self) -> int:
        """Highest exponent.  Raises ValueError on the zero polynomial."""
        if not self._terms:
            raise ValueError("degree of zero polynomial")
        return max(self._terms)

    def low_degree(self) -> int:
        if not self._terms:
            raise ValueError("low degree of zero polynomial")
        return min(self._terms)

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and 0 in self._terms)

    def constant(self) -> int:
        """Return the value of a constant polynomial, else raise ValueError."""
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self._terms.get(0, 0)

    def in_even_powers(self) -> bool:
        """True iff the polynomial lies in Z[v^2, v^-2]."""
        return all(e % 2 == 0 for e in self._terms)

    def is_polynomial(self) -> bool:
        """True iff no negative exponents occur."""
        return all(e >= 0 for e in self._terms)

    def is_bar_invariant(self) -> bool:
        t = self._terms
        return all(t.get(-e) == c for e, c in t.items())

    def at_one(self) -> int:
        return sum(self._terms.values())

    def evaluate(self, value):
        """Evaluate at a nonzero value; ints are promoted to Fraction."""
        if isinstance(value, int):
            value = Fraction(value)
        return sum((c * value**e for e, c in self._terms.items()), Fraction(0))

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other) -> LaurentPoly:
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        elif not isinstance(other, LaurentPoly):
            return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            n = out.get(e, 0) + c
            if n:
                out[e] = n
            else:
                del out[e]
        return LaurentPoly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly._raw({e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> LaurentPoly:
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        elif not isinstance(other, LaurentPoly):
            return NotImplemented
        if not other._terms:
            return self
        out = dict(self._terms)
        for e, c in other._terms.items():
            n = out.get(e, 0) - c
            if n:
                out[e] = n
            else:
                del out[e]
        return LaurentPoly._raw(out)

    def __rsub__(self, other) -> LaurentPoly:
        return LaurentPoly.coerce(other) - self

    def __mul__(self, other) -> LaurentPoly:
        if isinstance(other, int):
            if not other:
                return ZERO
            return LaurentPoly._raw({e: c * other for e, c in self._terms.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        a, b = self._terms, other._terms
        if not a or not b:
            return ZERO
        if len(a) == 1:
            (ea, ca), = a.items()
            return LaurentPoly._raw({ea + e: ca * c for e, c in b.items()})
        if len(b) == 1:
            (eb, cb), = b.items()
            return LaurentPoly._raw({eb + e: cb * c for e, c in a.items()})
        out: dict[int, int] = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = ea + eb
                out[e] = out.get(e, 0) + ca * cb
        return LaurentPoly._raw({e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> LaurentPoly:
        if n < 0:
            if len(self._terms) != 1:
                raise InexactDivision(f"{self} is not a unit")
            (e, c), = self._terms.items()
            if c not in (1, -1):
                raise InexactDivision(f"{self} is not a unit")
            return LaurentPoly._raw({e * n: c ** (-n)})
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k: int) -> LaurentPoly:
        """Multiply by v^k."""
        if not k:
            return self
        return LaurentPoly._raw({e + k: c for e, c in self._terms.items()})

    def bar(self) -> LaurentPoly:
        """The ring involution v -> v^-1."""
        return LaurentPoly._raw({-e: c for e, c in self._terms.items()})

    def negative_part(self) -> LaurentPoly:
        """Terms of strictly negative degree."""
        return LaurentPoly._raw({e: c for e, c in self._terms.items() if e < 0})

    def truncate_above(self, k: int) -> LaurentPoly:
        return LaurentPoly._raw({e: c for e, c in self._terms.items() if e <= k})

    # -- comparison / hashing ----------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPoly):
            return self._terms == other._terms
        if isinstance(other, int):
            if not other:
                return not self._terms
            return self._terms == {0: other}
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self) -> str:
        inner = ", ".join(f"{e}: {c}" for e, c in self.terms())
        return f"LaurentPoly({{{inner}}})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e, c in sorted(self._terms.items(), reverse=True):
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if e == 0:
                body = str(a)
            else:
                mono = "v" if e == 1 else f"v^{e}"
                body = mono if a == 1 else f"{a}*{mono}"
            parts.append((sign, body))
        s = parts[0][1] if parts[0][0] == "+" else "-" + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    # -- serialization ------------------------------------------------------

    def to_json(self) -> dict[str, int]:
        return {str(e): c for e, c in self.terms()}

    @classmethod
    def from_json(cls, data: Mapping[str, int]) -> LaurentPoly:
        return cls({int(e): int(c) for e, c in data.items()})

    def dumps(self) -> str:
        # dict preserves numeric insertion order; sort_keys would sort lexically
        return json.dumps(self.to_json())


ZERO = LaurentPoly._raw({})
ONE = LaurentPoly._raw({0: 1})
V = LaurentPoly._raw({1: 1})


def poly_arith(a: LaurentPoly, b: LaurentPoly, op: str) -> LaurentPoly:
    """Dispatch ``add``/``sub``/``mul``."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def bar(a: LaurentPoly) -> LaurentPoly:
    return a.bar()


def exact_divide(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """
    Quotient q with q*b == a in Z[v, v^-1].

    Long division from the top degree.  Raises InexactDivision if the
    remainder does not vanish or a leading coefficient does not divide.
    """
    if b.is_zero():
        raise ZeroDivisionError("division by zero Laurent polynomial")
    if a.is_zero():
        return ZERO
    bt = b._terms
    bdeg = max(bt)
    blow = min(bt)
    blead = bt[bdeg]
    floor = min(a._terms) - blow  # lowest exponent an exact quotient can have
    rem = dict(a._terms)
    quot: dict[int, int] = {}
    while rem:
        top = max(rem)
        shift = top - bdeg
        if shift < floor:
            raise InexactDivision(f"{a} is not divisible by {b}")
        q, r = divmod(rem[top], blead)
        if r:
            raise InexactDivision(f"{a} is not divisible by {b}")
        quot[shift] = q
        for e, bc in bt.items():
            k = e + shift
            n = rem.get(k, 0) - q * bc
            if n:
                rem[k] = n
            else:
                rem.pop(k, None)
    result = LaurentPoly._raw(quot)
    if result * b != a:
        raise InexactDivision(f"{a} is not divisible by {b}")
    return result


def poly_sum(items: Iterable[LaurentPoly]) -> LaurentPoly:
    out: dict[int, int] = {}
    for p in items:
        for e, c in p._terms.items():
            out[e] = out.get(e, 0) + c
    return LaurentPoly._raw({e: c for e, c in out.items() if c})
