"""Closed-form decision for perturbed monomial systems on the sphere around 1.

The system is f(x) = x**s + 2^(r+1) u(x) with a 1-Lipschitz perturbation u,
acting on the sphere of radius 2^-r centered at 1.  It is ergodic there if
and only if s = 1 (mod 4) and u(1) is odd; the decision is total.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .arith import Truncated2Adic
from .errors import InvalidParameter, NotInvariant
from .maps import CompatibleMap, perturbed_monomial
from .spheres import SphereSpec
from .verdicts import Method, Verdict, VerdictKind


@dataclass(frozen=True)
class PerturbedMonomial:
    """Parameters (s, r, u) of the system x |-> x**s + 2^(r+1) u(x)."""

    s: int
    r: int
    u: CompatibleMap

    def __post_init__(self):
        if self.s < 1:
            raise InvalidParameter("monomial exponent s must be >= 1")
        if self.r < 1:
            raise InvalidParameter("perturbation level r must be >= 1")

    def to_map(self) -> CompatibleMap:
        return perturbed_monomial(self.s, self.r, self.u)

    def sphere(self) -> SphereSpec:
        return SphereSpec(self.r, 1)

    def u_at_one(self, precision: int = 2) -> int:
        return self.u(1, precision)


def decide(pm: PerturbedMonomial) -> Verdict:
    """Total verdict: ergodic on the sphere iff s = 1 (mod 4) and u(1) odd."""
    s_ok = pm.s % 4 == 1
    u1 = pm.u_at_one(1)
    u_ok = u1 % 2 == 1
    if s_ok and u_ok:
        return Verdict(VerdictKind.DECIDED_ERGODIC, Method.MONOMIAL)
    failed = []
    if not s_ok:
        failed.append("s mod 4 != 1")
    if not u_ok:
        failed.append("u(1) even")
    return Verdict(
        VerdictKind.DECIDED_NOT_ERGODIC, Method.MONOMIAL,
        witness={"failed": failed, "s_mod_4": pm.s % 4, "u1_mod_2": u1 % 2},
    )


def base_congruence(pm: PerturbedMonomial) -> bool:
    """Closed congruence equivalent to the sphere criterion's first condition:

        s + 2^r * C(s, 2) + 2 u(1) = 3 (mod 4).

    The binomial coefficient is computed as an exact integer before reduction.
    """
    value = pm.s + (1 << pm.r) * comb(pm.s, 2) + 2 * pm.u_at_one(2)
    return value % 4 == 3


def expanded_conjugate(pm: PerturbedMonomial, x: Truncated2Adic) -> Truncated2Adic:
    """Conjugated map evaluated through the exact binomial expansion.

    With w = 1 + 2x the conjugate of f on the sphere around 1 expands to

        g(x) = u(1 + 2^r + 2^(r+1) x) + (s-1)/2 + s*x
               + sum_{j>=2} C(s, j) * 2^((j-1)r - 1) * w^j,

    a finite sum since C(s, j) vanishes for j > s.  Requires s odd (otherwise
    the sphere is not invariant and the division is inexact).  Must agree
    pointwise with the generic conjugation.
    """
    if pm.s % 2 == 0:
        raise NotInvariant("the sphere around 1 is invariant only for odd s")
    K = x.precision
    mod = 1 << K
    r = pm.r
    s = pm.s
    point = (1 + (1 << r) + (x.residue << (r + 1))) % mod
    total = pm.u(point, K) + (s - 1) // 2 + s * x.residue
    w = (1 + 2 * x.residue) % mod
    for j in range(2, s + 1):
        shift = (j - 1) * r - 1
        if shift >= K:
            break
        total += comb(s, j) * pow(w, j, mod) << shift
    return Truncated2Adic(total, K)
