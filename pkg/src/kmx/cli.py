"""Command-line front end.

Subcommands: classify, construct, verify, flat, curvature, slice, weyl.
All structured output is JSON with sorted keys and pinned float precision,
so a rerun with the same inputs produces identical bytes.  Exit codes:
0 success, 1 verification failure, 2 usage or input error.  The KMX_SEED
environment variable overrides any --seed argument.
"""

import argparse
import csv
import json
import os
import random
import sys
from fractions import Fraction
from typing import Optional

from . import jsonio
from .cartan import (
    classify,
    display_name,
    folding_name,
    match_named,
    named_matrix,
    parse_name,
    validate_gcm,
)
from .errors import KmxError
from .geometry import cartan_slice, curvature_report
from .group_action import flat_solver, weyl_orbit, weyl_singular
from .kac_moody import affine_generators
from .sampling import rand_compact_km
from .suites import SUITES, run_suites


def _resolve_seed(value: int) -> int:
    env = os.environ.get("KMX_SEED")
    if env is not None:
        return int(env)
    return value


def _emit(payload: dict, path: Optional[str] = None) -> None:
    text = jsonio.dumps(payload)
    sys.stdout.write(text)
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _load_json(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_classify(args) -> int:
    if args.name:
        named = parse_name(args.name)
        A = named_matrix(named)
    else:
        data = _load_json(args.matrix)
        rows = data["matrix"] if isinstance(data, dict) else data
        A = validate_gcm(rows)
        named = match_named(A)
    result = classify(A)
    payload = {
        "matrix": A.to_lists(),
        "class": result.kind.value,
        "components": [list(c.indices) for c in result.components],
        "name": display_name(named) if named else None,
        "twist": named.twist_order if named else None,
        "alias": folding_name(named) if named else None,
    }
    _emit(payload, args.out)
    return 0


def cmd_construct(args) -> int:
    named = parse_name(args.name)
    triples = affine_generators(named)
    payload = {
        "name": display_name(named),
        "rank": named.rank,
        "triples": [
            {
                "e": jsonio.element_to_json(t.e),
                "f": jsonio.element_to_json(t.f),
                "h": jsonio.element_to_json(t.h),
            }
            for t in triples
        ],
    }
    _emit(payload, args.out)
    return 0


def _report_json(report) -> dict:
    suites = []
    for s in report.suites:
        entry = {
            "name": s.name,
            "cases_run": s.cases_run,
            "failures": s.failures,
        }
        if s.max_residual is not None:
            entry["max_residual"] = jsonio.fixed_float(s.max_residual)
        suites.append(entry)
    return {"seed": report.seed, "config": report.config, "suites": suites}


def cmd_verify(args) -> int:
    names = None
    if args.suite and not args.all:
        names = []
        for name in args.suite:
            if name not in SUITES:
                raise KmxError(
                    f"unknown suite {name!r}; choose from {', '.join(SUITES)}"
                )
            names.append(name)
    serre_types = tuple(args.type) if args.type else ("A~1", "A~2")
    report = run_suites(
        names,
        seed=_resolve_seed(args.seed),
        trials=args.trials,
        steps=args.steps,
        tol=args.tol,
        serre_types=serre_types,
    )
    _emit(_report_json(report), args.report)
    return 0 if report.ok else 1


_ALGEBRAS = {"sl2": 2, "sl3": 3, "sl4": 4}


def cmd_flat(args) -> int:
    n = _ALGEBRAS[args.algebra]
    data = _load_json(args.loop)
    loop_data = data["loop"] if isinstance(data, dict) else data
    u = jsonio.loop_from_json(loop_data, tag="sl", n=n)
    result = flat_solver(u, steps=args.steps, tol=args.tol)
    payload = {
        "algebra": args.algebra,
        "steps": args.steps,
        "tol": jsonio.fixed_float(args.tol),
        "kernel_dim": result.kernel_dim,
        "residual": jsonio.fixed_float(result.residual),
        "commutator_defect": jsonio.fixed_float(result.commutator_defect),
        "kernel_basis": [
            jsonio.matrix_to_json(v.entries) for v in result.kernel_basis
        ],
        "flat_dim": result.kernel_dim + 2,
    }
    _emit(payload, args.out)
    return 0


def cmd_curvature(args) -> int:
    n = _ALGEBRAS[args.algebra]
    seed = _resolve_seed(args.seed)
    rng = random.Random(f"{seed}:curvature")
    samples = [
        tuple(rand_compact_km(rng, n, 2) for _ in range(3))
        for _ in range(args.samples)
    ]
    rep = curvature_report(samples)
    signs = [
        {"value": value.to_quad(), "sign": sign}
        for value, sign in rep.sign_samples
    ]
    payload = {
        "algebra": args.algebra,
        "samples": args.samples,
        "seed": seed,
        "bianchi_ok": rep.bianchi_ok,
        "symmetry_ok": list(rep.symmetry_ok),
        "estimate_ok": rep.estimate_ok,
        "sign_samples": signs,
        "all_nonnegative": all(s["sign"] in ("zero", "positive") for s in signs),
    }
    _emit(payload, args.report)
    return 0


def cmd_slice(args) -> int:
    sl = cartan_slice(Fraction(args.level), Fraction(args.rd), args.samples)
    payload = {
        "level": str(sl.level),
        "rd": str(sl.r_d),
        "samples": len(sl.points),
        "points": [
            {"a": str(a), "rc": str(rc), "rd": str(rd)} for a, rc, rd in sl.points
        ],
    }
    _emit(payload)
    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["a", "r_c", "r_d"])
            for a, rc, rd in sl.points:
                writer.writerow([str(a), str(rc), str(rd)])
    return 0


def cmd_weyl(args) -> int:
    x = Fraction(args.orbit)
    orbit = sorted(weyl_orbit(x, args.radius))
    payload = {
        "x": str(x),
        "radius": args.radius,
        "orbit": [str(v) for v in orbit],
        "orbit_size": len(orbit),
        "singular": weyl_singular(x, args.radius),
    }
    _emit(payload, args.out)
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kmx",
        description="Affine Kac-Moody algebras as double extensions of "
        "loop algebras: classification, realization, and verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="classify a generalized Cartan matrix")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--matrix", help="JSON file with an integer matrix")
    src.add_argument("--name", help="named type, e.g. A2, A~1, C~2t")
    p.add_argument("--out", help="also write the JSON result to this file")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("construct", help="emit Chevalley generators for A~n")
    p.add_argument("--name", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="run identity verification suites")
    p.add_argument("--suite", action="append", metavar="NAME",
                   help="suite name; repeatable (default: all)")
    p.add_argument("--all", action="store_true", help="run every suite")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=25)
    p.add_argument("--steps", type=int, default=1024,
                   help="integration steps for the flats suite")
    p.add_argument("--tol", type=float, default=1e-6,
                   help="kernel threshold for the flats suite")
    p.add_argument("--type", action="append", metavar="NAME",
                   help="affine type for the serre suite; repeatable")
    p.add_argument("--report", help="also write the JSON report to this file")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("flat", help="monodromy kernel of a compact loop")
    p.add_argument("--algebra", choices=sorted(_ALGEBRAS), default="sl2")
    p.add_argument("--loop", required=True, help="JSON loop file")
    p.add_argument("--steps", type=int, default=4096)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--out")
    p.set_defaults(func=cmd_flat)

    p = sub.add_parser("curvature", help="curvature identities on random samples")
    p.add_argument("--samples", type=int, default=50)
    p.add_argument("--algebra", choices=sorted(_ALGEBRAS), default="sl2")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--report", help="also write the JSON report to this file")
    p.set_defaults(func=cmd_curvature)

    p = sub.add_parser("slice", help="sample the extended Cartan slice")
    p.add_argument("--level", required=True, help="target squared length")
    p.add_argument("--rd", required=True, help="fixed d-coordinate")
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--csv", help="write points as CSV with columns a, r_c, r_d")
    p.set_defaults(func=cmd_slice)

    p = sub.add_parser("weyl", help="affine Weyl orbit of a rational point")
    p.add_argument("--orbit", required=True, metavar="X",
                   help="rational point, e.g. 1/2")
    p.add_argument("--radius", type=int, default=8)
    p.add_argument("--out")
    p.set_defaults(func=cmd_weyl)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except KmxError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError, KeyError, ZeroDivisionError,
            json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
