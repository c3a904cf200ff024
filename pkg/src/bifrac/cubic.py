"""Exact arithmetic in the cubic field Q(cbrt(d)).

``CubicNumber`` is an immutable element a0 + a1*cbrt(d) + a2*cbrt(d)^2 with
rational coordinates, for an integer radicand d >= 2 that is not a perfect
cube.  All arithmetic is exact; ordering, sign and floor are decided by
refining rational brackets of cbrt(d) until the answer is certain, which
always terminates because a value with a nonzero irrational part can never
equal a rational.

``delta_enclosure`` is the reference bracket: plain bisection of x^3 - d on
[1, d] with exact rational endpoints.  The kernel's dyadic brackets (integer
cube roots at doubling precision) are the fast path; tests cross-check the
two against each other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from ._backend import kernel as _k

Rational = Fraction

RationalLike = int | Fraction


def is_perfect_cube(n: int) -> bool:
    return _k.perfect_cube(n)


def _check_radicand(d: int) -> None:
    if not isinstance(d, int) or isinstance(d, bool):
        raise ValueError("radicand d must be an int")
    if d < 2:
        raise ValueError(f"d={d} is out of range (need d >= 2)")
    if _k.perfect_cube(d):
        raise ValueError(f"d={d} is a perfect cube")


@dataclass(frozen=True)
class Enclosure:
    """Closed rational interval [lo, hi] certified to contain a real value."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError("enclosure endpoints out of order")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def __contains__(self, value) -> bool:
        return self.lo <= value <= self.hi

    def squared(self) -> "Enclosure":
        """Enclosure of the square; requires a nonnegative interval."""
        if self.lo < 0:
            raise ValueError("squared() needs a nonnegative enclosure")
        return Enclosure(self.lo * self.lo, self.hi * self.hi)


def delta_enclosure(d: int, width_bound: RationalLike) -> Enclosure:
    """Bracket cbrt(d) by bisection: lo^3 < d < hi^3, hi - lo <= width_bound.

    Deterministic bisection from [1, d], so calls with smaller bounds return
    nested refinements of earlier answers.
    """
    _check_radicand(d)
    bound = Fraction(width_bound)
    if bound <= 0:
        raise ValueError("width_bound must be positive")
    lo, hi = Fraction(1), Fraction(d)
    while hi - lo > bound:
        mid = (lo + hi) / 2
        if mid ** 3 < d:
            lo = mid
        else:
            hi = mid
    return Enclosure(lo, hi)


def _as_raw(value: RationalLike) -> tuple:
    f = Fraction(value)
    return (f.numerator, 0, 0, f.denominator)


class CubicNumber:
    """Immutable exact element of Q(cbrt(d))."""

    __slots__ = ("_d", "_t")

    def __init__(self, d: int, a0: RationalLike = 0, a1: RationalLike = 0,
                 a2: RationalLike = 0):
        _check_radicand(d)
        f0, f1, f2 = Fraction(a0), Fraction(a1), Fraction(a2)
        q = math.lcm(f0.denominator, f1.denominator, f2.denominator)
        t = _k.normalize(f0.numerator * (q // f0.denominator),
                         f1.numerator * (q // f1.denominator),
                         f2.numerator * (q // f2.denominator), q)
        object.__setattr__(self, "_d", d)
        object.__setattr__(self, "_t", t)

    @classmethod
    def _from_raw(cls, d: int, t: tuple) -> "CubicNumber":
        obj = object.__new__(cls)
        object.__setattr__(obj, "_d", d)
        object.__setattr__(obj, "_t", t)
        return obj

    @classmethod
    def cbrt(cls, d: int) -> "CubicNumber":
        """cbrt(d) itself."""
        _check_radicand(d)
        return cls._from_raw(d, (0, 1, 0, 1))

    @classmethod
    def cbrt_square(cls, d: int) -> "CubicNumber":
        """cbrt(d)^2 = cbrt(d^2) in the Q(cbrt(d)) basis."""
        _check_radicand(d)
        return cls._from_raw(d, (0, 0, 1, 1))

    # -- coordinates ----------------------------------------------------

    @property
    def d(self) -> int:
        return self._d

    @property
    def a0(self) -> Fraction:
        return Fraction(self._t[0], self._t[3])

    @property
    def a1(self) -> Fraction:
        return Fraction(self._t[1], self._t[3])

    @property
    def a2(self) -> Fraction:
        return Fraction(self._t[2], self._t[3])

    def coordinates(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.a0, self.a1, self.a2)

    def is_rational(self) -> bool:
        return self._t[1] == 0 and self._t[2] == 0

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("value is irrational")
        return Fraction(self._t[0], self._t[3])

    def is_zero(self) -> bool:
        return self._t[:3] == (0, 0, 0)

    # -- arithmetic ------------------------------------------------------

    def _coerce(self, other):
        """Raw tuple for the other operand, or None when not coercible."""
        if isinstance(other, CubicNumber):
            if other._d == self._d:
                return other._t
            if other.is_rational():
                return other._t
            raise ValueError(
                f"mismatched radicands: d={self._d} vs d={other._d}")
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return _as_raw(other)
        return None

    def __add__(self, other):
        t = self._coerce(other)
        if t is None:
            return NotImplemented
        return CubicNumber._from_raw(self._d, _k.add(self._t, t))

    __radd__ = __add__

    def __sub__(self, other):
        t = self._coerce(other)
        if t is None:
            return NotImplemented
        return CubicNumber._from_raw(self._d, _k.sub(self._t, t))

    def __rsub__(self, other):
        t = self._coerce(other)
        if t is None:
            return NotImplemented
        return CubicNumber._from_raw(self._d, _k.sub(t, self._t))

    def __neg__(self):
        return CubicNumber._from_raw(self._d, _k.neg(self._t))

    def __mul__(self, other):
        t = self._coerce(other)
        if t is None:
            return NotImplemented
        return CubicNumber._from_raw(self._d, _k.mul(self._d, self._t, t))

    __rmul__ = __mul__

    def inv(self) -> "CubicNumber":
        """Exact multiplicative inverse (adjugate over the field norm)."""
        return CubicNumber._from_raw(self._d, _k.inv(self._d, self._t))

    def __truediv__(self, other):
        t = self._coerce(other)
        if t is None:
            return NotImplemented
        return CubicNumber._from_raw(
            self._d, _k.mul(self._d, self._t, _k.inv(self._d, t)))

    def __rtruediv__(self, other):
        t = self._coerce(other)
        if t is None:
            return NotImplemented
        return CubicNumber._from_raw(
            self._d, _k.mul(self._d, t, _k.inv(self._d, self._t)))

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        base = self if n >= 0 else self.inv()
        result = CubicNumber._from_raw(self._d, (1, 0, 0, 1))
        for _ in range(abs(n)):
            result = result * base
        return result

    # -- decisions ---------------------------------------------------------

    def sign(self) -> int:
        return _k.sign(self._d, self._t)

    def floor(self) -> int:
        """Greatest integer <= value; exact for rationals, bracket-refined otherwise."""
        return _k.floor(self._d, self._t)

    __floor__ = floor

    def compare(self, other) -> int:
        """-1, 0 or 1 as self <, ==, > other (exact)."""
        t = self._coerce(other)
        if t is None:
            raise TypeError(f"cannot compare CubicNumber with {type(other)!r}")
        return _k.sign(self._d, _k.sub(self._t, t))

    def __eq__(self, other):
        if isinstance(other, CubicNumber):
            if other._d == self._d:
                return other._t == self._t
            # distinct radicands: only rational values can coincide
            return (self.is_rational() and other.is_rational()
                    and self._t == other._t)
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self._t == _as_raw(other)
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.as_fraction())
        return hash((self._d, self._t))

    def __lt__(self, other):
        return self.compare(other) < 0

    def __le__(self, other):
        return self.compare(other) <= 0

    def __gt__(self, other):
        return self.compare(other) > 0

    def __ge__(self, other):
        return self.compare(other) >= 0

    def __bool__(self):
        return not self.is_zero()

    # -- presentation -----------------------------------------------------

    def __repr__(self):
        return (f"CubicNumber(d={self._d}, a0={self.a0}, "
                f"a1={self.a1}, a2={self.a2})")

    def __str__(self):
        parts = []
        for coef, unit in ((self.a0, ""), (self.a1, f"*cbrt({self._d})"),
                           (self.a2, f"*cbrt({self._d})^2")):
            if coef:
                parts.append(f"({coef}){unit}" if unit else f"{coef}")
        return " + ".join(parts) if parts else "0"

    def __float__(self):
        lo, hi, den = _k.bracket(self._d, self._t, 64)
        return (lo + hi) / (2 * den)


def value_enclosure(x: CubicNumber, width_bound: RationalLike) -> Enclosure:
    """Certified rational bracket of a cubic number, refined to the bound."""
    bound = Fraction(width_bound)
    if bound <= 0:
        raise ValueError("width_bound must be positive")
    if x.is_rational():
        v = x.as_fraction()
        return Enclosure(v, v)
    bits = 32
    while True:
        lo, hi, den = _k.bracket(x._d, x._t, bits)
        if Fraction(hi - lo, den) <= bound:
            return Enclosure(Fraction(lo, den), Fraction(hi, den))
        bits <<= 1


# Operation-style entry points over the class API.

def cn_mul(x: CubicNumber, y: CubicNumber) -> CubicNumber:
    return x * y


def cn_inv(x: CubicNumber) -> CubicNumber:
    return x.inv()


def cn_compare(x, y) -> int:
    """-1, 0 or 1; accepts a rational constant for either argument."""
    if isinstance(x, CubicNumber):
        return x.compare(y)
    if isinstance(y, CubicNumber):
        return -y.compare(x)
    diff = Fraction(x) - Fraction(y)
    return (diff > 0) - (diff < 0)


def cn_floor(x: CubicNumber) -> int:
    return x.floor()
