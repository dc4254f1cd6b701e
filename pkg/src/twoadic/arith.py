"""Exact arithmetic on 2-adic integers truncated to a fixed bit precision.

A value is a residue known modulo 2^K for an explicit K.  All operations stay
inside that modulus; nothing here ever claims more precision than its inputs
provide.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import EvenDivisor, InvalidParameter, PrecisionExceeded

#: Working precision used by the command line tool unless overridden.
DEFAULT_PRECISION = 64


@dataclass(frozen=True)
class Valuation:
    """2-adic valuation, either known exactly or bounded from below.

    ``Exact(v)`` means the lowest set bit of the value sits at position ``v``.
    ``AtLeast(K)`` means the residue is zero at precision K: the truncation
    cannot distinguish 0 from 2^K * t, so only a lower bound is known.
    """

    value: int
    is_exact: bool

    @classmethod
    def exact(cls, v: int) -> "Valuation":
        return cls(v, True)

    @classmethod
    def at_least(cls, k: int) -> "Valuation":
        return cls(k, False)

    def abs2_upper_bound(self) -> Fraction:
        """Upper bound on |x|_2 = 2^-v; exact when the valuation is exact."""
        return Fraction(1, 1 << self.value)

    def __repr__(self) -> str:
        kind = "Exact" if self.is_exact else "AtLeast"
        return f"Valuation.{kind}({self.value})"


@dataclass(frozen=True)
class Truncated2Adic:
    """A 2-adic integer known modulo 2^precision."""

    residue: int
    precision: int

    def __post_init__(self):
        if self.precision < 1:
            raise InvalidParameter(f"precision must be >= 1, got {self.precision}")
        object.__setattr__(self, "residue", self.residue % (1 << self.precision))

    # -- ring operations (result precision = min of the operand precisions) --

    def _coerce(self, other) -> "Truncated2Adic":
        if isinstance(other, Truncated2Adic):
            return other
        if isinstance(other, int):
            return Truncated2Adic(other, self.precision)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        k = min(self.precision, other.precision)
        return Truncated2Adic(self.residue + other.residue, k)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        k = min(self.precision, other.precision)
        return Truncated2Adic(self.residue - other.residue, k)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __neg__(self):
        return Truncated2Adic(-self.residue, self.precision)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        k = min(self.precision, other.precision)
        return Truncated2Adic(self.residue * other.residue, k)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise InvalidParameter("exponent must be a nonnegative integer")
        return Truncated2Adic(pow(self.residue, exponent, 1 << self.precision), self.precision)

    # -- queries ------------------------------------------------------------

    def valuation(self) -> Valuation:
        if self.residue == 0:
            return Valuation.at_least(self.precision)
        return Valuation.exact((self.residue & -self.residue).bit_length() - 1)

    def abs2_upper_bound(self) -> Fraction:
        return self.valuation().abs2_upper_bound()

    def reduce(self, k: int) -> "Truncated2Adic":
        """Image under the reduction map mod 2^k, k <= current precision."""
        if k > self.precision:
            raise PrecisionExceeded(
                f"cannot reduce a precision-{self.precision} value to {k} bits"
            )
        return Truncated2Adic(self.residue, k)

    def __str__(self) -> str:
        return f"{self.residue} mod 2^{self.precision}"


def val2(x: Truncated2Adic) -> Valuation:
    return x.valuation()


def inv_odd(c: Truncated2Adic) -> Truncated2Adic:
    """Multiplicative inverse of an odd residue modulo 2^precision."""
    if c.residue % 2 == 0:
        raise EvenDivisor(f"{c} is not a unit in Z_2")
    return Truncated2Adic(pow(c.residue, -1, 1 << c.precision), c.precision)


def reduce(x: Truncated2Adic, k: int) -> Truncated2Adic:
    return x.reduce(k)
