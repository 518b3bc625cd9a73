"""Exact arithmetic in the field Q(sqrt(3)).

Regular-polygon steps for n in {3, 4, 6, 12} rotate by angles whose cosine and
sine live in Q(sqrt(3)), so every construction without a two-valued
line/circle intersection evaluates exactly in this field.  Elements are kept
as ``a + b*sqrt(3)`` with rational ``a``, ``b``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

Rational = Union[int, Fraction]


class QuadExt:
    """Number a + b*sqrt(3) with exact rational components."""

    __slots__ = ("a", "b")

    def __init__(self, a: Rational = 0, b: Rational = 0):
        self.a = Fraction(a)
        self.b = Fraction(b)

    @staticmethod
    def sqrt3() -> "QuadExt":
        return QuadExt(0, 1)

    @staticmethod
    def coerce(x) -> "QuadExt":
        if isinstance(x, QuadExt):
            return x
        return QuadExt(x)

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_rational(self) -> bool:
        return self.b == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = QuadExt(other)
        if not isinstance(other, QuadExt):
            return NotImplemented
        return self.a == other.a and self.b == other.b

    def __hash__(self):
        return hash((self.a, self.b))

    def __add__(self, other):
        other = QuadExt.coerce(other)
        return QuadExt(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __sub__(self, other):
        other = QuadExt.coerce(other)
        return QuadExt(self.a - other.a, self.b - other.b)

    def __rsub__(self, other):
        return QuadExt.coerce(other) - self

    def __neg__(self):
        return QuadExt(-self.a, -self.b)

    def __mul__(self, other):
        other = QuadExt.coerce(other)
        return QuadExt(
            self.a * other.a + 3 * self.b * other.b,
            self.a * other.b + self.b * other.a,
        )

    __rmul__ = __mul__

    def inverse(self) -> "QuadExt":
        # (a + b*s)^-1 = (a - b*s) / (a^2 - 3 b^2); the norm is nonzero for
        # nonzero elements because 3 is not a rational square.
        norm = self.a * self.a - 3 * self.b * self.b
        if norm == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt(3))")
        return QuadExt(self.a / norm, -self.b / norm)

    def __truediv__(self, other):
        return self * QuadExt.coerce(other).inverse()

    def __rtruediv__(self, other):
        return QuadExt.coerce(other) * self.inverse()

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * 3.0 ** 0.5

    def __repr__(self) -> str:
        if self.b == 0:
            return f"{self.a}"
        return f"({self.a} + {self.b}*sqrt3)"
