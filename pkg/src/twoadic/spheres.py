"""Geometry and dynamics on 2-adic spheres.

A sphere of radius 2^-r around a center a is the same set as the ball of
radius 2^-(r-1)-1 around the base point a + 2^r, so its points are exactly
a + 2^r + 2^(r+1) * Z_2.  Dynamics on an invariant sphere are studied through
the conjugated map g on all of Z_2 obtained by the affine change of variables
x |-> a + 2^r + 2^(r+1) x.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Set

from .errors import (
    InvalidParameter,
    ModulusTooLarge,
    NotDivisible,
    NotInvariant,
    PrecisionExceeded,
)
from .maps import CompatibleMap, ConjugatedProvenance
from .vanderput import INDETERMINATE, floor_log2, vdp_b
from .verdicts import Method, Verdict, VerdictKind
from .ergodic import MAX_MODULUS_EXPONENT, _cycle_witness, oracle_is_transitive


@dataclass(frozen=True)
class SphereSpec:
    """Sphere of radius 2^-r around center a; a is stored reduced mod 2^r."""

    r: int
    a: int

    def __post_init__(self):
        if self.r < 1:
            raise InvalidParameter("radius exponent r must be >= 1")
        object.__setattr__(self, "a", self.a % (1 << self.r))

    @property
    def base_point(self) -> int:
        """The point a + 2^r identifying the equal ball of radius 2^-(r+1)."""
        return self.a + (1 << self.r)

    def __str__(self) -> str:
        return f"S(radius=2^-{self.r}, center={self.a})"


def sphere_points_mod(s: SphereSpec, t: int) -> Set[int]:
    """Residues of the sphere modulo 2^(r+1+t); exactly 2^t of them."""
    if t < 0:
        raise InvalidParameter("depth t must be >= 0")
    exponent = s.r + 1 + t
    if exponent > MAX_MODULUS_EXPONENT:
        raise ModulusTooLarge(
            f"enumeration mod 2^{exponent} exceeds the 2^{MAX_MODULUS_EXPONENT} cap"
        )
    mod = 1 << exponent
    step = 1 << (s.r + 1)
    base = s.base_point
    return {(base + step * S) % mod for S in range(1 << t)}


def check_invariance(f: CompatibleMap, s: SphereSpec) -> bool:
    """True iff f maps the sphere into itself: f(base) = base mod 2^(r+1)."""
    k = s.r + 1
    return f(s.base_point, k) == s.base_point % (1 << k)


def conjugate(f: CompatibleMap, s: SphereSpec) -> CompatibleMap:
    """The map g with g(x) = (f(base + 2^(r+1) x) - base) / 2^(r+1).

    Requires the sphere to be f-invariant, which makes the division exact.
    Evaluating g mod 2^k evaluates f at precision k + r + 1.
    """
    if not check_invariance(f, s):
        raise NotInvariant(
            f"{s} is not invariant: f({s.base_point}) != {s.base_point} "
            f"mod 2^{s.r + 1}"
        )
    shift = s.r + 1
    base = s.base_point
    max_precision = None
    if f.max_precision is not None:
        max_precision = f.max_precision - shift
        if max_precision < 1:
            raise PrecisionExceeded(
                f"map supports only {f.max_precision} bits, conjugation needs more"
            )

    def ev(x: int, k: int) -> int:
        kk = k + shift
        y = f((base + (x << shift)) % (1 << kk), kk)
        return ((y - base) >> shift) % (1 << k)

    return CompatibleMap(ev, ConjugatedProvenance(f, s),
                         max_precision=max_precision,
                         label=f"conjugate({f.label or 'f'}, {s})")


def sphere_orbit_is_transitive(f: CompatibleMap, s: SphereSpec, t: int) -> bool:
    """Direct orbit walk of the base point among the sphere residues mod 2^(r+1+t)."""
    if t < 1:
        raise InvalidParameter("depth t must be >= 1")
    exponent = s.r + 1 + t
    if exponent > MAX_MODULUS_EXPONENT:
        raise ModulusTooLarge(
            f"orbit walk mod 2^{exponent} exceeds the 2^{MAX_MODULUS_EXPONENT} cap"
        )
    size = 1 << t
    start = s.base_point % (1 << exponent)
    x = f(start, exponent)
    steps = 1
    while x != start and steps < size:
        x = f(x, exponent)
        steps += 1
    return x == start and steps == size


def sphere_ergodicity_criterion(f: CompatibleMap, s: SphereSpec,
                                level: int = 10,
                                precision: Optional[int] = None) -> Verdict:
    """Coefficient test for ergodicity on an invariant sphere.

    The relevant normalized coefficients are those of f itself at the sphere
    indices base + m * 2^(r+1); their index log is r + 1 + floor(log2 m) for
    m >= 1.  Conditions, in fixed order:

      1. f(base) = base + 2^(r+1) (mod 2^(r+2));
      2. b_f odd at all sphere indices with 1 <= m < 2^level;
      3. b_f(base + 2^(r+1)) = 1 (mod 4);
      4. b_f(base + 2^(r+2)) + b_f(base + 3*2^(r+1)) = 2 (mod 4);
      5. block sums over m in [2^(n-1), 2^n) = 0 (mod 4) for 3 <= n <= level.

    Verdict semantics match the whole-space criterion: rejections are total,
    passes are bounded, indeterminate coefficients are inconclusive.
    """
    if level < 2:
        raise InvalidParameter("criterion level must be >= 2")
    r = s.r
    K = precision if precision is not None else r + level + 4
    if K < r + level + 4:
        raise PrecisionExceeded(
            f"sphere criterion at level {level} needs {r + level + 4} bits"
        )
    if f.max_precision is not None and f.max_precision < K:
        raise PrecisionExceeded(
            f"criterion needs {K} bits, map supports {f.max_precision}"
        )

    base = s.base_point
    step = 1 << (r + 1)

    if not check_invariance(f, s):
        return Verdict(
            VerdictKind.NOT_INVARIANT, Method.CRITERION,
            witness={"base_point": base, "image": f(base, r + 1),
                     "modulus_exponent": r + 1},
        )

    def reject(condition: int, detection_level: int, **operands) -> Verdict:
        witness = {"condition": condition, "detection_level": detection_level}
        witness.update(operands)
        return Verdict(VerdictKind.DECIDED_NOT_ERGODIC, Method.CRITERION,
                       witness=witness)

    mod_r2 = 1 << (r + 2)
    image = f(base, r + 2)
    expected = (base + step) % mod_r2
    if image != expected:
        return reject(1, 1, image=image, expected=expected,
                      modulus_exponent=r + 2)

    bs = {}
    for m in range(1, 1 << level):
        index = base + m * step
        try:
            bm = vdp_b(f, index, K)
        except NotDivisible as exc:
            return Verdict(
                VerdictKind.NOT_ONE_LIPSCHITZ, Method.CRITERION,
                witness={"m": exc.index, "coefficient": exc.coefficient},
            )
        if bm is INDETERMINATE:
            return Verdict(
                VerdictKind.INCONCLUSIVE, Method.CRITERION,
                reason=f"b_f({index}) indeterminate at working precision {K}",
            )
        bs[m] = bm.residue
        if bs[m] % 2 != 1:
            return reject(2, floor_log2(m) + 1, m=m, index=index,
                          b=bs[m] % 4)

    if bs[1] % 4 != 1:
        return reject(3, 2, b=bs[1] % 4, index=base + step)
    if (bs[2] + bs[3]) % 4 != 2:
        return reject(4, 3, b2=bs[2] % 4, b3=bs[3] % 4)
    for n in range(3, level + 1):
        total = sum(bs[m] for m in range(1 << (n - 1), 1 << n)) % 4
        if total != 0:
            return reject(5, n, n=n, sum_mod_4=total)

    return Verdict(VerdictKind.VERIFIED_UP_TO_LEVEL, Method.CRITERION, level=level)


def oracle_sphere_ergodic(f: CompatibleMap, s: SphereSpec,
                          t_max: int = 10) -> Verdict:
    """Transitivity of the conjugated map at every depth up to t_max."""
    if not check_invariance(f, s):
        return Verdict(
            VerdictKind.NOT_INVARIANT, Method.ORACLE,
            witness={"base_point": s.base_point,
                     "image": f(s.base_point, s.r + 1),
                     "modulus_exponent": s.r + 1},
        )
    g = conjugate(f, s)
    for t in range(1, t_max + 1):
        if not oracle_is_transitive(g, t):
            witness = _cycle_witness(g, t)
            witness["depth"] = t
            return Verdict(VerdictKind.DECIDED_NOT_ERGODIC, Method.ORACLE,
                           witness=witness)
    return Verdict(VerdictKind.VERIFIED_UP_TO_LEVEL, Method.ORACLE, level=t_max)
