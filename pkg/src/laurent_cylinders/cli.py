"""Command-line interface.

Exit codes: 0 verified/certified, 1 refuted/not certified, 2 unsupported input
or violated preconditions, 3 internal error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .arith import ArithmeticPreconditionError, square_pair_solve
from .catalog import FamilyError, FamilySpec, make_family
from .certificates import (
    CERTIFIED,
    PRECONDITIONS_VIOLATED,
    certify_danielewski_noniso,
    certify_fermat_noniso,
    certify_fiber_distinct,
)
from .constructions import ConstructionError, UnverifiedConstruction, build_cylinder_iso
from .fibrations import FibrationSpec, UnsupportedFibration, degenerate_fibers
from .reproduce import run_all
from .scan import scan_family
from .store import ArtifactError, artifact_verdict, load_json, recompute_verdict, store_artifact, write_json
from .varieties import DEFAULT_ORACLE_POINTS, DEFAULT_SEED

OK, NEGATIVE, UNSUPPORTED, INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _family(args) -> FamilySpec:
    if args.family == "fermat":
        if args.p is None or args.q is None:
            raise UsageError("--family fermat needs --p and --q")
        return FamilySpec.fermat(args.p, args.q, 1)
    if args.family == "danielewski":
        if args.n is None or args.m is None:
            raise UsageError("--family danielewski needs --n and --m")
        return FamilySpec.danielewski(args.n, args.m, 1)
    raise UsageError(f"unknown family {args.family!r}")


def _emit(args, payload: dict, lines: list[str]) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False))
    else:
        print("\n".join(lines))


def _save(args, obj: dict, prefix: str) -> Path:
    if getattr(args, "out", None):
        return write_json(obj, args.out)
    return store_artifact(obj, prefix, args.output_dir)


def cmd_verify_cylinder_iso(args) -> int:
    spec = _family(args)
    hs = make_family(spec)
    try:
        recipe = build_cylinder_iso(hs.f, hs.action, hs.m, args.l, args.lp, points=args.points, seed=args.seed)
    except UnverifiedConstruction as exc:
        _emit(args, {"verdict": exc.report.verdict, "report": exc.report.to_json()}, [f"refuted: {exc}"])
        return NEGATIVE if exc.report.verdict == "refuted" else UNSUPPORTED
    data = recipe.to_json()
    path = _save(args, data, "iso")
    lines = [f"{spec.describe()}: X_{args.lp} x G_m -> X_{args.l} x G_m", *("  " + r for r in recipe.map.render())]
    lines += [f"  {c.name}: {c.status} ({c.detail})" for c in recipe.report.checks]
    lines += [f"verdict: {recipe.report.verdict}", f"written: {path}"]
    _emit(args, {**data, "path": str(path)}, lines)
    return OK


def cmd_certify_noniso(args) -> int:
    if args.family == "fiber":
        if args.map is None or args.map2 is None or args.lp is None:
            raise UsageError("--family fiber needs --map, --lp and --map2")
        cert = certify_fiber_distinct(
            args.p, args.q, args.l, FibrationSpec.parse(args.map), args.lp, FibrationSpec.parse(args.map2),
            args.torus_factors,
        )
    elif args.family == "fermat":
        if args.p is None or args.q is None:
            raise UsageError("--family fermat needs --p and --q")
        cert = certify_fermat_noniso(args.p, args.q, args.l)
    else:
        if args.n is None or args.m is None or args.lp is None:
            raise UsageError("--family danielewski needs --n, --m and --lp")
        cert = certify_danielewski_noniso(args.n, args.m, args.l, args.lp)
    data = cert.to_json()
    path = _save(args, data, "cert")
    lines = [f"{cert.kind} {json.dumps({k: v for k, v in cert.parameters.items() if isinstance(v, int)})}"]
    lines += [f"  [{c.status}] {c.description}" for c in cert.checks]
    lines += [f"  precondition failed: {pc['condition']}" for pc in cert.parameters.get("preconditions", []) if not pc["holds"]]
    lines += [f"verdict: {cert.verdict}", f"written: {path}"]
    _emit(args, {**data, "path": str(path)}, lines)
    if cert.verdict == CERTIFIED:
        return OK
    return UNSUPPORTED if cert.verdict == PRECONDITIONS_VIOLATED else NEGATIVE


def cmd_find_square_pair(args) -> int:
    pairs = square_pair_solve(args.m, args.bound)
    payload = {"m": args.m, "bound": args.bound, "pairs": [p.to_json() for p in pairs]}
    lines = [f"{'a':>6} {'b':>8} {'c':>8}  nontrivial"]
    lines += [f"{p.a:>6} {p.b:>8} {p.c:>8}  {'yes' if p.nontrivial else 'no'}" for p in pairs]
    if not pairs:
        lines.append(f"no pairs with b <= {args.bound}")
    _emit(args, payload, lines)
    return OK if pairs else NEGATIVE


def cmd_fibers(args) -> int:
    report = degenerate_fibers(args.p, args.q, args.l, FibrationSpec.parse(args.map))
    data = report.to_json()
    lines = [f"t^{args.l} (x^{args.p} + y^{args.q}) = 1, map {report.spec}"]
    for fib in report.fibers:
        lines.append(f"  multiplicity {fib.multiplicity} over roots of {fib.location_text()} "
                     f"({fib.distinct_locations} distinct)")
    lines.append(f"multiset: {list(report.multiset)}")
    _emit(args, data, lines)
    return OK


def cmd_scan(args) -> int:
    spec = _family(args)
    result = scan_family(spec, args.max, points=args.points, seed=args.seed)
    data = result.to_json()
    cert_paths = []
    for e in result.counterexamples:
        cert_paths.append(str(store_artifact(e.certificate.to_json(), "cert", args.output_dir)))
    data["certificate_files"] = cert_paths
    path = _save(args, data, "scan")
    lines = [f"{spec.describe()} pairs up to {args.max}:"]
    for e in result.entries:
        mark = "  <- counterexample" if e.counterexample else ""
        verdict = e.certificate.verdict if e.certificate else "-"
        lines.append(f"  ({e.ell}, {e.ell_prime}): cylinders {e.cylinder}, certificate {verdict}{mark}")
    lines.append(f"counterexamples: {[(e.ell, e.ell_prime) for e in result.counterexamples]}")
    lines.append(f"written: {path}")
    _emit(args, {**data, "path": str(path)}, lines)
    return OK


def cmd_reproduce(args) -> int:
    results = run_all(points=args.points, only=args.only)
    payload = {"seed": DEFAULT_SEED, "points": args.points, "results": [r.to_json() for r in results]}
    width = max(len(r.key) for r in results) if results else 0
    lines = [f"{'PASS' if r.passed else 'FAIL'}  {r.key:<{width}}  {r.detail}" for r in results]
    _emit(args, payload, lines)
    return OK if all(r.passed for r in results) else NEGATIVE


def cmd_recheck(args) -> int:
    data = load_json(args.file)
    stored = artifact_verdict(data)
    fresh = recompute_verdict(data)
    same = stored == fresh
    _emit(args, {"stored": stored, "recomputed": fresh, "consistent": same},
          [f"stored: {stored}", f"recomputed: {fresh}", "consistent" if same else "MISMATCH"])
    return OK if same else NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="laurent-cylinders", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, family=True, choices=("fermat", "danielewski")):
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument("--output-dir", help="artifact directory (default: $LAURENT_CYLINDERS_OUT or ./artifacts)")
        if family:
            p.add_argument("--family", required=True, choices=choices)
            for name in ("p", "q", "n", "m"):
                p.add_argument(f"--{name}", type=int)

    def oracle(p):
        p.add_argument("--points", type=int, default=DEFAULT_ORACLE_POINTS, help="oracle points per map")
        p.add_argument("--seed", type=int, default=DEFAULT_SEED)

    p = sub.add_parser("verify-cylinder-iso", help="build and verify X_lp x G_m -> X_l x G_m")
    common(p)
    oracle(p)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--lp", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify_cylinder_iso)

    p = sub.add_parser("certify-noniso", help="emit a non-isomorphism certificate")
    common(p, choices=("fermat", "danielewski", "fiber"))
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--lp", type=int)
    p.add_argument("--map", help="first fibration, e.g. x^2*t (fiber family)")
    p.add_argument("--map2", help="second fibration (fiber family)")
    p.add_argument("--torus-factors", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_certify_noniso)

    p = sub.add_parser("find-square-pair", help="pairs a <= b, a + b = 0 mod m, ab = 1 mod m^2")
    common(p, family=False)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--bound", type=int, required=True)
    p.set_defaults(func=cmd_find_square_pair)

    p = sub.add_parser("fibers", help="degenerate fibres of a monomial fibration")
    common(p, family=False)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--map", required=True)
    p.set_defaults(func=cmd_fibers)

    p = sub.add_parser("scan", help="grid of exponent pairs: cylinder maps against certificates")
    common(p)
    oracle(p)
    p.add_argument("--max", type=int, default=40)
    p.add_argument("--out")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("reproduce-paper", help="run every worked example and print a pass/fail table")
    common(p, family=False)
    p.add_argument("--points", type=int, default=DEFAULT_ORACLE_POINTS)
    p.add_argument("--only", nargs="*", help="criterion keys to run")
    p.set_defaults(func=cmd_reproduce)

    p = sub.add_parser("recheck", help="reload a JSON artifact and recompute its verdict")
    common(p, family=False)
    p.add_argument("file")
    p.set_defaults(func=cmd_recheck)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (
        UsageError,
        ArtifactError,
        FamilyError,
        ConstructionError,
        ArithmeticPreconditionError,
        UnsupportedFibration,
    ) as exc:
        print(f"unsupported: {exc}", file=sys.stderr)
        return UNSUPPORTED
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return INTERNAL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
