"""Exact dyadic rationals ``numerator / 2**exponent``."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering


@total_ordering
@dataclass(frozen=True)
class DyadicRational:
    """Non-negative dyadic rational kept in canonical form (odd numerator or zero)."""

    numerator: int
    exponent: int = 0

    def __post_init__(self) -> None:
        if self.numerator < 0 or self.exponent < 0:
            raise ValueError("dyadic rationals here are non-negative with exponent >= 0")
        num, exp = self.numerator, self.exponent
        if num == 0:
            exp = 0
        else:
            shift = min((num & -num).bit_length() - 1, exp)
            num >>= shift
            exp -= shift
        object.__setattr__(self, "numerator", num)
        object.__setattr__(self, "exponent", exp)

    @classmethod
    def of(cls, value: "int | Fraction | DyadicRational") -> "DyadicRational":
        if isinstance(value, DyadicRational):
            return value
        if isinstance(value, int):
            return cls(value, 0)
        frac = Fraction(value)
        den = frac.denominator
        if den & (den - 1):
            raise ValueError(f"{value} is not dyadic")
        return cls(frac.numerator, den.bit_length() - 1)

    @classmethod
    def pow2(cls, k: int) -> "DyadicRational":
        """The value 2**-k."""
        return cls(1, k)

    def as_fraction(self) -> Fraction:
        return Fraction(self.numerator, 1 << self.exponent)

    def __float__(self) -> float:
        return float(self.as_fraction())

    def _aligned(self, other: "DyadicRational") -> tuple[int, int, int]:
        exp = max(self.exponent, other.exponent)
        return self.numerator << (exp - self.exponent), other.numerator << (exp - other.exponent), exp

    def __add__(self, other: "DyadicRational") -> "DyadicRational":
        other = DyadicRational.of(other)
        a, b, exp = self._aligned(other)
        return DyadicRational(a + b, exp)

    __radd__ = __add__

    def __sub__(self, other: "DyadicRational") -> "DyadicRational":
        other = DyadicRational.of(other)
        a, b, exp = self._aligned(other)
        if b > a:
            raise ValueError("dyadic subtraction would go negative")
        return DyadicRational(a - b, exp)

    def __mul__(self, other: "DyadicRational") -> "DyadicRational":
        other = DyadicRational.of(other)
        return DyadicRational(self.numerator * other.numerator, self.exponent + other.exponent)

    __rmul__ = __mul__

    def half(self) -> "DyadicRational":
        return DyadicRational(self.numerator, self.exponent + 1)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.as_fraction() == other
        if not isinstance(other, DyadicRational):
            return NotImplemented
        return self.numerator == other.numerator and self.exponent == other.exponent

    def __hash__(self) -> int:
        return hash((self.numerator, self.exponent))

    def __lt__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.as_fraction() < other
        if not isinstance(other, DyadicRational):
            return NotImplemented
        a, b, _ = self._aligned(other)
        return a < b

    def __str__(self) -> str:
        return f"{self.numerator}/2^{self.exponent}"

    def __repr__(self) -> str:
        return f"DyadicRational({self.numerator}, {self.exponent})"


ZERO = DyadicRational(0)
ONE = DyadicRational(1)

_TEXT = re.compile(r"^(\d+)(?:/(?:2\^(\d+)|(\d+)))?$")


def parse_dyadic(text: str) -> DyadicRational:
    """Accept ``n``, ``n/2^e`` or ``n/d`` with ``d`` a power of two."""
    m = _TEXT.match(text.strip())
    if not m:
        raise ValueError(f"not a dyadic rational: {text!r}")
    num = int(m.group(1))
    if m.group(2) is not None:
        return DyadicRational(num, int(m.group(2)))
    if m.group(3) is not None:
        return DyadicRational.of(Fraction(num, int(m.group(3))))
    return DyadicRational(num)
