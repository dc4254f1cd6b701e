"""Command line front end.

Exit codes: 0 = decided/verified positive, 1 = decided negative,
2 = inconclusive, 3 = input or usage error.  Reports are deterministic for
identical arguments and seed, up to the elapsed-time field.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .arith import DEFAULT_PRECISION
from .errors import MapSyntaxError, TwoAdicError
from .maps import CompatibleMap, check_compatibility, dsl
from .vanderput import INDETERMINATE, floor_log2, spectrum
from .verdicts import Verdict
from .ergodic import (
    check_measure_preserving,
    cycle_structure,
    ergodicity_criterion,
    oracle_ergodic,
)
from .spheres import (
    SphereSpec,
    oracle_sphere_ergodic,
    sphere_ergodicity_criterion,
)
from .monomial import PerturbedMonomial, base_congruence, decide

EXIT_INPUT_ERROR = 3


def _add_map_arguments(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--map", help="map expression, e.g. 'x**5 + 4'")
    group.add_argument("--map-file", help="file containing a map expression")


def _load_map(args: argparse.Namespace) -> CompatibleMap:
    if args.map is not None:
        source = args.map
    else:
        with open(args.map_file, "r", encoding="utf-8") as fh:
            source = fh.read().strip()
    return dsl(source)


def _report(args, subcommand: str, inputs: dict, verdict: Verdict,
            extra: dict = None, started: float = 0.0) -> int:
    payload = {
        "subcommand": subcommand,
        "inputs": inputs,
        "verdict": verdict.to_dict(),
        "elapsed_s": round(time.perf_counter() - started, 6),
    }
    if extra:
        payload.update(extra)
    if getattr(args, "json", False):
        print(json.dumps(payload, sort_keys=True))
    else:
        print(f"{subcommand}: {verdict.describe()}")
        if extra:
            for key, value in sorted(extra.items()):
                print(f"  {key}: {value}")
    return verdict.exit_code


def _validate_precision(precision: int, needed: int) -> None:
    if needed > precision:
        raise TwoAdicError(
            f"requested levels need {needed} bits but precision is {precision}"
        )


# ---------------------------------------------------------------------------
# Subcommand handlers


def _cmd_check_lipschitz(args) -> int:
    f = _load_map(args)
    started = time.perf_counter()
    witness = check_compatibility(f, args.level)
    payload = {
        "subcommand": "check-lipschitz",
        "inputs": {"map": f.label, "level": args.level},
        "ok": witness is None,
        "witness": None if witness is None else
        {"m": witness.m, "coefficient": witness.coefficient},
        "elapsed_s": round(time.perf_counter() - started, 6),
    }
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    elif witness is None:
        print(f"check-lipschitz: ok up to index 2^{args.level}")
    else:
        print(f"check-lipschitz: violation at m={witness.m} "
              f"(coefficient {witness.coefficient})")
    return 0 if witness is None else 1


def _cmd_check_mp(args) -> int:
    f = _load_map(args)
    started = time.perf_counter()
    verdict = check_measure_preserving(f, args.depth)
    return _report(args, "check-mp", {"map": f.label, "depth": args.depth},
                   verdict, started=started)


def _combined_ergodic_verdict(criterion: Verdict, oracle: Verdict) -> Verdict:
    # an oracle rejection is total and overrides a bounded or inconclusive pass
    if not criterion.is_positive and criterion.is_decided:
        return criterion
    if not oracle.is_positive:
        return oracle
    return criterion


def _cmd_check_ergodic(args) -> int:
    f = _load_map(args)
    _validate_precision(args.precision, args.level + 3)
    started = time.perf_counter()
    criterion = ergodicity_criterion(f, args.level, precision=args.precision)
    oracle = oracle_ergodic(f, args.oracle_depth)
    verdict = _combined_ergodic_verdict(criterion, oracle)
    extra = {"criterion": criterion.to_dict(), "oracle": oracle.to_dict()}
    inputs = {"map": f.label, "level": args.level,
              "oracle_depth": args.oracle_depth, "precision": args.precision}
    return _report(args, "check-ergodic", inputs, verdict, extra, started)


def _cmd_check_sphere(args) -> int:
    f = _load_map(args)
    sphere = SphereSpec(args.r, args.a)
    _validate_precision(args.precision, args.r + args.level + 4)
    started = time.perf_counter()
    criterion = sphere_ergodicity_criterion(f, sphere, args.level,
                                            precision=args.precision)
    oracle = oracle_sphere_ergodic(f, sphere, args.oracle_depth)
    verdict = _combined_ergodic_verdict(criterion, oracle)
    extra = {"criterion": criterion.to_dict(), "oracle": oracle.to_dict()}
    inputs = {"map": f.label, "r": sphere.r, "a": sphere.a,
              "normalized_center": sphere.a, "level": args.level,
              "oracle_depth": args.oracle_depth, "precision": args.precision}
    return _report(args, "check-sphere", inputs, verdict, extra, started)


def _cmd_thm41(args) -> int:
    u = dsl(args.u)
    pm = PerturbedMonomial(args.s, args.r, u)
    started = time.perf_counter()
    verdict = decide(pm)
    extra = {
        "clauses": {
            "s_mod_4": pm.s % 4,
            "s_clause": pm.s % 4 == 1,
            "u1_mod_2": pm.u_at_one(1),
            "u_clause": pm.u_at_one(1) % 2 == 1,
            "base_congruence": base_congruence(pm),
        },
    }
    if args.cross_check:
        oracle = oracle_sphere_ergodic(pm.to_map(), pm.sphere(),
                                       args.oracle_depth)
        extra["oracle"] = oracle.to_dict()
        extra["agreement"] = (verdict.is_positive == oracle.is_positive)
    inputs = {"s": pm.s, "r": pm.r, "u": u.label}
    return _report(args, "thm41", inputs, verdict, extra, started)


def _cmd_vdp(args) -> int:
    f = _load_map(args)
    spec = spectrum(f, 1 << args.level, args.precision)
    print("m,floor_log2,B,b")
    for entry in spec.entries:
        b = "indeterminate" if entry.b is INDETERMINATE else entry.b.residue
        print(f"{entry.m},{floor_log2(entry.m)},{entry.B.residue},{b}")
    return 0


def _cmd_orbit(args) -> int:
    f = _load_map(args)
    sphere = SphereSpec(args.r, args.a)
    exponent = sphere.r + 1 + args.t
    mod = 1 << exponent
    x = sphere.base_point % mod
    print("step,residue")
    for step in range(1 << args.t):
        print(f"{step},{x}")
        x = f(x, exponent)
    return 0


def _cmd_cycles(args) -> int:
    f = _load_map(args)
    structure = cycle_structure(f, args.k)
    if not structure.is_bijective:
        a, b = structure.non_bijective_witness
        print(f"non-bijective mod 2^{args.k}: f({a}) = f({b}) = {f(a, args.k)}",
              file=sys.stderr)
        return 1
    print("length,representative")
    for length, rep in structure.cycles:
        print(f"{length},{rep}")
    return 0


# ---------------------------------------------------------------------------
# Argument parsing


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="twoadic",
        description="Verify measure preservation and ergodicity of "
                    "1-Lipschitz maps on 2-adic integers and spheres.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p, level_default=10):
        _add_map_arguments(p)
        p.add_argument("--level", type=int, default=level_default,
                       help="criterion level N (scan indices below 2^N)")
        p.add_argument("--precision", type=int, default=DEFAULT_PRECISION,
                       help="working precision in bits")
        p.add_argument("--json", action="store_true",
                       help="emit a JSON report")

    p = sub.add_parser("check-lipschitz",
                       help="verify the 1-Lipschitz coefficient law up to an index bound")
    _add_map_arguments(p)
    p.add_argument("--level", type=int, default=12)
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=_cmd_check_lipschitz)

    p = sub.add_parser("check-mp",
                       help="verify measure preservation (bijectivity mod 2^k)")
    _add_map_arguments(p)
    p.add_argument("--depth", type=int, default=12,
                   help="largest modulus exponent checked")
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=_cmd_check_mp)

    p = sub.add_parser("check-ergodic",
                       help="ergodicity on Z_2: coefficient criterion plus oracle")
    common(p)
    p.add_argument("--oracle-depth", type=int, default=12)
    p.set_defaults(handler=_cmd_check_ergodic)

    p = sub.add_parser("check-sphere",
                       help="ergodicity on a 2-adic sphere")
    common(p)
    p.add_argument("--r", type=int, required=True, help="radius exponent")
    p.add_argument("--a", type=int, required=True, help="sphere center")
    p.add_argument("--oracle-depth", type=int, default=12)
    p.set_defaults(handler=_cmd_check_sphere)

    p = sub.add_parser("thm41",
                       help="decide x**s + 2**(r+1)*u(x) on the sphere around 1")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--u", default="1", help="perturbation expression")
    p.add_argument("--cross-check", action="store_true",
                   help="also run the sphere oracle and report agreement")
    p.add_argument("--oracle-depth", type=int, default=10)
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=_cmd_thm41)

    p = sub.add_parser("vdp", help="emit the coefficient table as CSV")
    _add_map_arguments(p)
    p.add_argument("--level", type=int, default=5,
                   help="emit indices below 2^level")
    p.add_argument("--precision", type=int, default=32)
    p.set_defaults(handler=_cmd_vdp)

    p = sub.add_parser("orbit", help="emit a sphere orbit as CSV")
    _add_map_arguments(p)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--t", type=int, default=8, help="orbit depth")
    p.set_defaults(handler=_cmd_orbit)

    p = sub.add_parser("cycles", help="emit the cycle structure mod 2^k as CSV")
    _add_map_arguments(p)
    p.add_argument("--k", type=int, default=8)
    p.set_defaults(handler=_cmd_cycles)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT_ERROR if exc.code else 0
    try:
        return args.handler(args)
    except MapSyntaxError as exc:
        print(f"twoadic: map syntax error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except (TwoAdicError, OSError) as exc:
        print(f"twoadic: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
