"""Exact numbers of the form ``a + b*sqrt(d)`` with rational a, b, d.

Every bound in this package is an affine expression in at most one square
root, so sign tests (and therefore all verdicts) are decided exactly here.
Decimal display and enclosing intervals use directed rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import ROUND_CEILING, ROUND_FLOOR, Context, Decimal
from fractions import Fraction
from typing import Union

Rational = Union[int, Fraction]


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def sqrt_bracket(d: Fraction, bits: int) -> tuple[Fraction, Fraction]:
    """Rationals lo <= sqrt(d) <= hi with hi - lo <= 2**-bits / q.

    Collapses to a point when ``d`` is a perfect rational square.
    """
    d = Fraction(d)
    if d < 0:
        raise ValueError("square root of a negative number")
    p, q = d.numerator, d.denominator
    r = math.isqrt(p * q)
    if r * r == p * q:
        v = Fraction(r, q)
        return v, v
    scale = 1 << bits
    lo = math.isqrt(p * q * scale * scale)
    return Fraction(lo, q * scale), Fraction(lo + 1, q * scale)


@dataclass(frozen=True)
class Surd:
    a: Fraction
    b: Fraction = Fraction(0)
    d: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        object.__setattr__(self, "d", Fraction(self.d))
        if self.d < 0:
            raise ValueError("negative radicand")

    @classmethod
    def of(cls, x: "Surd | Rational") -> "Surd":
        return x if isinstance(x, Surd) else cls(Fraction(x))

    @property
    def is_rational(self) -> bool:
        if self.b == 0 or self.d == 0:
            return True
        lo, hi = sqrt_bracket(self.d, 1)
        return lo == hi

    def as_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"{self} is irrational")
        return self.a + self.b * sqrt_bracket(self.d, 1)[0]

    def sign(self) -> int:
        sa, sb = _sign(self.a), _sign(self.b) if self.d else 0
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        lhs, rhs = self.a * self.a, self.b * self.b * self.d
        if lhs == rhs:
            return 0
        return sa if lhs > rhs else sb

    def _combine(self, other: "Surd | Rational", sgn: int) -> "Surd":
        o = Surd.of(other)
        if o.b == 0 or o.d == 0:
            return Surd(self.a + sgn * o.a, self.b, self.d)
        if self.b == 0 or self.d == 0:
            return Surd(self.a + sgn * o.a, sgn * o.b, o.d)
        if self.d != o.d:
            raise ValueError("cannot combine surds with different radicands")
        return Surd(self.a + sgn * o.a, self.b + sgn * o.b, self.d)

    def __add__(self, other: "Surd | Rational") -> "Surd":
        return self._combine(other, 1)

    __radd__ = __add__

    def __sub__(self, other: "Surd | Rational") -> "Surd":
        return self._combine(other, -1)

    def __rsub__(self, other: "Surd | Rational") -> "Surd":
        return Surd.of(other) - self

    def __neg__(self) -> "Surd":
        return Surd(-self.a, -self.b, self.d)

    def __mul__(self, c: Rational) -> "Surd":
        if isinstance(c, Surd):
            raise TypeError("only rational scaling is supported")
        c = Fraction(c)
        return Surd(self.a * c, self.b * c, self.d)

    __rmul__ = __mul__

    def __le__(self, other: "Surd | Rational") -> bool:
        return (self - other).sign() <= 0

    def __lt__(self, other: "Surd | Rational") -> bool:
        return (self - other).sign() < 0

    def __ge__(self, other: "Surd | Rational") -> bool:
        return (self - other).sign() >= 0

    def __gt__(self, other: "Surd | Rational") -> bool:
        return (self - other).sign() > 0

    def bracket(self, bits: int = 128) -> tuple[Fraction, Fraction]:
        """Enclosing interval, refined until its width is at most
        ``2**-64`` times the value's magnitude (or it is a point)."""
        if self.b == 0 or self.d == 0:
            return self.a, self.a
        while True:
            r_lo, r_hi = sqrt_bracket(self.d, bits)
            ends = (self.a + self.b * r_lo, self.a + self.b * r_hi)
            lo, hi = min(ends), max(ends)
            mag = max(abs(lo), abs(hi))
            if lo == hi or (hi - lo) * (1 << 64) <= mag and _sign(lo) == _sign(hi):
                return lo, hi
            bits *= 2
            if bits > 1 << 16:  # value is exactly zero only if lo == hi
                return lo, hi

    def floor_value(self) -> Fraction:
        return self.bracket()[0]

    def ceil_value(self) -> Fraction:
        return self.bracket()[1]

    def __float__(self) -> float:
        lo, hi = self.bracket()
        return float((lo + hi) / 2)

    def __str__(self) -> str:
        if self.b == 0 or self.d == 0:
            return str(self.a)
        return f"{self.a} + ({self.b})*sqrt({self.d})"


def format_decimal(x: "Surd | Rational", rounding: str = "down", digits: int = 12) -> str:
    """Render with ``digits`` significant digits, rounded toward -inf
    (``down``) or +inf (``up``)."""
    s = Surd.of(x)
    lo, hi = s.bracket()
    q = lo if rounding == "down" else hi
    mode = {"down": ROUND_FLOOR, "up": ROUND_CEILING}[rounding]
    if q == 0:
        return "0"
    ctx = Context(prec=digits, rounding=mode)
    d = ctx.divide(Decimal(q.numerator), Decimal(q.denominator))
    quantum = Decimal((0, (1,), d.adjusted() - digits + 1))
    d = d.quantize(quantum, rounding=mode)
    return format(d, "f")
