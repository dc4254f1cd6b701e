"""Van der Put series machinery for maps on Z_2.

The expansion of a continuous map f writes f(x) as a sum of raw coefficients
B_m times the characteristic function of the ball of radius 2^(-floor(log2 m)-1)
around m.  For 1-Lipschitz maps every B_m carries a divided power
2^floor(log2 m); dividing it out gives the normalized coefficient b_m that the
ergodicity criteria constrain mod 2 and mod 4.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Union

from .arith import Truncated2Adic
from .errors import InvalidParameter, NotDivisible, PrecisionExceeded
from .maps import CompatibleMap


def floor_log2(m: int) -> int:
    """Bit length minus one; by convention 0 for m = 0."""
    return m.bit_length() - 1 if m >= 1 else 0


class Indeterminate:
    """Normalized coefficient whose value is unknowable at working precision.

    Produced when the raw coefficient has residue 0: the truncation cannot
    distinguish an exact zero from 2^K * t, so |b_m|_2 cannot be certified.
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INDETERMINATE"


INDETERMINATE = Indeterminate()

Coefficient = Union[Truncated2Adic, Indeterminate]


def chi(m: int, x: Truncated2Adic) -> int:
    """Characteristic function of the ball around m: 1 iff x = m mod 2^(n+1)."""
    if m < 0:
        raise InvalidParameter("index must be nonnegative")
    n = floor_log2(m)
    if x.precision < n + 1:
        raise PrecisionExceeded(
            f"chi({m}, .) needs {n + 1} bits, value has {x.precision}"
        )
    return 1 if (x.residue - m) % (1 << (n + 1)) == 0 else 0


def vdp_B(f: CompatibleMap, m: int, precision: int) -> Truncated2Adic:
    """Raw coefficient B_m at the given working precision.

    In base 2 the leading digit of m is always 1, so for m >= 2 the second
    evaluation point is simply m with its top bit cleared; B_m = f(m) for
    m in {0, 1}.
    """
    if m < 0:
        raise InvalidParameter("index must be nonnegative")
    if m < 2:
        return Truncated2Adic(f(m, precision), precision)
    top = 1 << (m.bit_length() - 1)
    return Truncated2Adic(f(m, precision) - f(m - top, precision), precision)


def vdp_b(f: CompatibleMap, m: int, precision: int) -> Coefficient:
    """Normalized coefficient b_m = B_m / 2^floor(log2 m).

    Known at precision ``precision - floor(log2 m)``.  Raises ``NotDivisible``
    when the divided power is missing (f is not 1-Lipschitz).  For m >= 2 a
    zero raw residue yields INDETERMINATE; for m in {0, 1} no division happens
    and the value is returned as-is.
    """
    n = floor_log2(m)
    if precision <= n:
        raise PrecisionExceeded(
            f"b_{m} needs more than {n} bits of working precision"
        )
    B = vdp_B(f, m, precision)
    if m < 2:
        return B
    if B.residue % (1 << n):
        raise NotDivisible(m, B.residue)
    if B.residue == 0:
        return INDETERMINATE
    return Truncated2Adic(B.residue >> n, precision - n)


def reconstruct(f: CompatibleMap, x: int, level: int, precision: int = None) -> Truncated2Adic:
    """Partial sum of the series over indices m < 2^level, evaluated at x < 2^level.

    Only indices whose ball contains x contribute: one per coefficient block
    [2^n, 2^(n+1)) plus the block {0, 1}, so the sum telescopes to f(x) once
    the level covers x.
    """
    if level < 1:
        raise InvalidParameter("level must be >= 1")
    if not 0 <= x < (1 << level):
        raise InvalidParameter(f"x must satisfy 0 <= x < 2^{level}")
    K = precision if precision is not None else level
    total = vdp_B(f, x & 1, K).residue  # chi(0,.) picks evens, chi(1,.) odds
    for n in range(1, level):
        if (x >> n) & 1:
            m = x & ((1 << (n + 1)) - 1)
            total += vdp_B(f, m, K).residue
    return Truncated2Adic(total, K)


# ---------------------------------------------------------------------------
# Spectrum snapshots


@dataclass(frozen=True)
class SpectrumEntry:
    m: int
    B: Truncated2Adic
    b: Coefficient


@dataclass(frozen=True)
class VdpSpectrum:
    """Table of (B_m, b_m) for all m below an index bound, at one precision."""

    map: CompatibleMap
    entries: tuple
    index_bound: int
    precision: int


def spectrum(f: CompatibleMap, index_bound: int, precision: int) -> VdpSpectrum:
    """Coefficient table for 0 <= m < index_bound.

    Fails with ``NotDivisible`` at the least offending index if f violates the
    1-Lipschitz coefficient law inside the range.
    """
    entries: List[SpectrumEntry] = []
    for m in range(index_bound):
        B = vdp_B(f, m, precision)
        b = vdp_b(f, m, precision)
        entries.append(SpectrumEntry(m, B, b))
    return VdpSpectrum(f, tuple(entries), index_bound, precision)
