"""
Exact values r * sqrt(d) with r rational and d a square-free positive integer.
"""
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Tuple, Union

from sympy import factorint

from straub.errors import InvalidArgumentError

RationalLike = Union[int, Fraction]


def split_square(m: int) -> Tuple[int, int]:
    """Write m > 0 as s^2 * d with d square-free; returns (s, d)."""
    if m < 1:
        raise InvalidArgumentError(f"expected a positive integer, got {m}")
    s, d = 1, 1
    for prime, exponent in factorint(m).items():
        s *= prime ** (exponent // 2)
        d *= prime ** (exponent % 2)
    return s, d


def is_square_free(d: int) -> bool:
    return d >= 1 and all(exponent == 1 for exponent in factorint(d).values())


@dataclass(frozen=True)
class Surd:
    """Canonical r * sqrt(d); zero is stored as (0, 1)."""

    r: Fraction
    d: int = 1

    def __post_init__(self) -> None:
        object.__setattr__(self, "r", Fraction(self.r))
        if self.r == 0:
            object.__setattr__(self, "d", 1)
        elif not is_square_free(self.d):
            raise InvalidArgumentError(f"radicand {self.d} is not square-free")

    @classmethod
    def sqrt(cls, value: RationalLike) -> "Surd":
        """Square root of a non-negative rational: sqrt(p/q) = sqrt(p*q)/q."""
        value = Fraction(value)
        if value < 0:
            raise InvalidArgumentError(f"square root of negative value {value}")
        if value == 0:
            return cls(Fraction(0))
        s, d = split_square(value.numerator * value.denominator)
        return cls(Fraction(s, value.denominator), d)

    def square(self) -> Fraction:
        return self.r * self.r * self.d

    def __mul__(self, other: Union["Surd", RationalLike]) -> "Surd":
        if isinstance(other, Surd):
            root = Surd.sqrt(self.d * other.d)
            return Surd(self.r * other.r * root.r, root.d)
        return Surd(self.r * Fraction(other), self.d)

    __rmul__ = __mul__

    def __truediv__(self, other: RationalLike) -> "Surd":
        other = Fraction(other)
        if other == 0:
            raise ZeroDivisionError("Surd division by zero")
        return Surd(self.r / other, self.d)

    def _signed_square(self) -> Fraction:
        return self.square() if self.r >= 0 else -self.square()

    def __lt__(self, other: "Surd") -> bool:
        return self._signed_square() < other._signed_square()

    def __le__(self, other: "Surd") -> bool:
        return self == other or self < other

    def __float__(self) -> float:
        return float(self.r) * self.d ** 0.5

    def decimal(self, places: int) -> str:
        """Decimal expansion truncated (toward zero) after the given number of places."""
        scaled = self.r.numerator ** 2 * self.d * 10 ** (2 * places) // self.r.denominator ** 2
        digits = str(isqrt(scaled)).rjust(places + 1, "0")
        sign = "-" if self.r < 0 else ""
        if places == 0:
            return sign + digits
        return f"{sign}{digits[:-places]}.{digits[-places:]}"

    def __str__(self) -> str:
        r = self.r if self.r.denominator != 1 else self.r.numerator
        if self.d == 1:
            return str(r)
        return f"{r}*sqrt({self.d})"
