"""Verification toolkit for discrete dynamical systems on 2-adic integers.

Decides or boundedly verifies measure preservation and ergodicity of
1-Lipschitz self-maps of Z_2 and of 2-adic spheres, using normalized van der
Put coefficient criteria cross-checked against brute-force transitivity
oracles on the reduced maps mod 2^k.
"""

from .arith import DEFAULT_PRECISION, Truncated2Adic, Valuation, inv_odd, reduce, val2
from .errors import (
    EvenDivisor,
    EvenInvConstant,
    InvalidParameter,
    MapSyntaxError,
    ModulusTooLarge,
    NonConstantExponent,
    NonConstantInvArgument,
    NotDivisible,
    NotInvariant,
    PrecisionExceeded,
    PreconditionViolated,
    TwoAdicError,
    WrongProvenance,
)
from .expr import parse_map, to_source
from .maps import (
    CompatibilityWitness,
    CompatibleMap,
    affine,
    check_compatibility,
    dsl,
    eval_map,
    from_expr,
    identity,
    perturbed_monomial,
    polynomial,
    table_map,
)
from .vanderput import (
    INDETERMINATE,
    SpectrumEntry,
    VdpSpectrum,
    chi,
    floor_log2,
    reconstruct,
    spectrum,
    vdp_B,
    vdp_b,
)
from .verdicts import Method, Verdict, VerdictKind
from .ergodic import (
    CRITERION_ORACLE_OFFSET,
    CycleStructure,
    check_measure_preserving,
    criterion_difference_form,
    cycle_structure,
    ergodicity_criterion,
    larin_decision,
    oracle_ergodic,
    oracle_is_bijective,
    oracle_is_transitive,
)
from .spheres import (
    SphereSpec,
    check_invariance,
    conjugate,
    oracle_sphere_ergodic,
    sphere_ergodicity_criterion,
    sphere_orbit_is_transitive,
    sphere_points_mod,
)
from .monomial import PerturbedMonomial, base_congruence, decide, expanded_conjugate

__version__ = "0.1.0"
