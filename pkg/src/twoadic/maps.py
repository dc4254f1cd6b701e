"""Compatible (1-Lipschitz) self-maps of Z_2 and their finite evaluation.

A ``CompatibleMap`` is an evaluator ``(residue mod 2^k, k) -> residue mod 2^k``
together with a provenance tag recording how it was built.  Checkers dispatch
on provenance: only map families backed by an exact decision procedure may
ever receive a "decided" verdict.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from . import expr as _expr
from .arith import Truncated2Adic
from .errors import InvalidParameter, PrecisionExceeded

# ---------------------------------------------------------------------------
# Provenance tags


@dataclass(frozen=True)
class DslProvenance:
    expr: _expr.Expr
    source: Optional[str] = None


@dataclass(frozen=True)
class AffineProvenance:
    c0: int
    c1: int


@dataclass(frozen=True)
class PolynomialProvenance:
    coeffs: tuple  # low-degree first


@dataclass(frozen=True)
class PerturbedMonomialProvenance:
    s: int
    r: int
    u: "CompatibleMap"


@dataclass(frozen=True)
class ConjugatedProvenance:
    inner: "CompatibleMap"
    sphere: object  # SphereSpec; kept untyped to avoid an import cycle


@dataclass(frozen=True)
class TableProvenance:
    k_max: int
    values: tuple


class CompatibleMap:
    """An evaluable self-map of Z_2, well defined modulo every supported 2^k."""

    def __init__(self, evaluate: Callable[[int, int], int], provenance,
                 max_precision: Optional[int] = None, label: Optional[str] = None):
        self._evaluate = evaluate
        self.provenance = provenance
        self.max_precision = max_precision
        self.label = label

    def __call__(self, x: int, k: int) -> int:
        """Value at x, reduced mod 2^k."""
        if k < 1:
            raise InvalidParameter(f"precision must be >= 1, got {k}")
        if self.max_precision is not None and k > self.max_precision:
            raise PrecisionExceeded(
                f"map supports at most {self.max_precision} bits, {k} requested"
            )
        mod = 1 << k
        return self._evaluate(x % mod, k) % mod

    def __repr__(self):
        name = self.label or type(self.provenance).__name__
        return f"<CompatibleMap {name}>"


def eval_map(f: CompatibleMap, x: Truncated2Adic) -> Truncated2Adic:
    """Apply f to a truncated value; the result keeps the input precision."""
    return Truncated2Adic(f(x.residue, x.precision), x.precision)


# ---------------------------------------------------------------------------
# Constructors

def from_expr(e: _expr.Expr, source: Optional[str] = None) -> CompatibleMap:
    def ev(x: int, k: int) -> int:
        return _expr.eval_expr(e, x, k)

    return CompatibleMap(ev, DslProvenance(e, source), label=source or _expr.to_source(e))


def dsl(source: str) -> CompatibleMap:
    """Parse and compile a map expression, e.g. ``dsl("x**5 + 4")``."""
    return from_expr(_expr.parse_map(source), source)


def affine(c0: int, c1: int) -> CompatibleMap:
    def ev(x: int, k: int) -> int:
        return (c0 + c1 * x) % (1 << k)

    return CompatibleMap(ev, AffineProvenance(c0, c1), label=f"{c0} + {c1}*x")


def polynomial(coeffs) -> CompatibleMap:
    cs = tuple(int(c) for c in coeffs)
    rev = cs[::-1]

    def ev(x: int, k: int) -> int:
        mod = 1 << k
        acc = 0
        for c in rev:
            acc = (acc * x + c) % mod
        return acc

    return CompatibleMap(ev, PolynomialProvenance(cs), label=f"poly{list(cs)}")


def perturbed_monomial(s: int, r: int, u: CompatibleMap) -> CompatibleMap:
    """x |-> x**s + 2^(r+1) * u(x) with a 1-Lipschitz perturbation u."""
    if s < 1:
        raise InvalidParameter("monomial exponent s must be >= 1")
    if r < 1:
        raise InvalidParameter("perturbation level r must be >= 1")

    shift = r + 1

    def ev(x: int, k: int) -> int:
        mod = 1 << k
        return (pow(x, s, mod) + (u(x, k) << shift)) % mod

    return CompatibleMap(
        ev,
        PerturbedMonomialProvenance(s, r, u),
        max_precision=u.max_precision,
        label=f"x**{s} + {1 << shift}*u(x)",
    )


def table_map(values) -> CompatibleMap:
    """A map given by its value table on residues mod 2^k_max.

    The table is taken at face value: it need not be compatible, which is what
    makes this the natural carrier for non-1-Lipschitz witnesses.  Checkers
    needing more than k_max bits fail with ``PrecisionExceeded`` instead of
    extending the table (no canonical compatible extension exists).
    """
    vals = tuple(int(v) for v in values)
    k_max = len(vals).bit_length() - 1
    if len(vals) != 1 << k_max or k_max < 1:
        raise InvalidParameter("table length must be a power of two, at least 2")

    def ev(x: int, k: int) -> int:
        return vals[x % len(vals)] % (1 << k)

    return CompatibleMap(ev, TableProvenance(k_max, vals),
                         max_precision=k_max, label=f"table{list(vals)}")


def identity() -> CompatibleMap:
    return dsl("x")


# ---------------------------------------------------------------------------
# Bounded 1-Lipschitz verification


@dataclass(frozen=True)
class CompatibilityWitness:
    """Index m whose raw coefficient misses the divided power 2^floor(log2 m)."""

    m: int
    coefficient: int


def check_compatibility(f: CompatibleMap, level: int) -> Optional[CompatibilityWitness]:
    """Check the coefficient divisibility law for all indices 1 <= m < 2^level.

    For a 1-Lipschitz map every raw van der Put coefficient B_m is divisible
    by 2^floor(log2 m).  Returns None when no violation exists below 2^level
    (bounded verification), otherwise the least violating index with its
    coefficient.
    """
    if level < 1:
        raise InvalidParameter("level must be >= 1")
    # one shared precision with two bits of headroom, capped by what f supports
    K = level + 2
    if f.max_precision is not None:
        K = min(K, f.max_precision)
    for m in range(2, 1 << level):
        n = m.bit_length() - 1
        if K < n + 1:
            raise PrecisionExceeded(
                f"index {m} needs {n + 1} bits, map supports {K}"
            )
        B = (f(m, K) - f(m - (1 << n), K)) % (1 << K)
        if B % (1 << n):
            return CompatibilityWitness(m, B)
    return None
