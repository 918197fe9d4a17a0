"""Command-line entry point.

Exit codes: 0 success, 1 bound violation (or a failed claim), 2 parse error,
3 degenerate body, 4 invalid mu, 5 A not contained in K, 6 any other failure
(resource limit, unsupported dimension, generation failure).
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import bounds as B
from .arith import fmt, parse_rational
from .errors import (BoundViolation, ContractError, DegenerateBodyError, LatboundError,
                     NotApplicable, ParseError)
from .formats import (emit_instance, emit_limit_table, emit_report, emit_summary,
                      parse_instance, parse_polygon, rational_list)
from .geometry import contains
from .harness import BoundEntry, certify_instance, generate_instance, mink2_limit_check, run_campaign
from .lattice import count_lattice_points, successive_minima
from .squeeze import polygon_text, squeeze_polygon, verify_difference_containment, verify_nesting

EXIT_OK, EXIT_VIOLATION, EXIT_PARSE, EXIT_DEGENERATE, EXIT_MU, EXIT_CONTAINMENT, EXIT_OTHER = range(7)


class _Exit(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise _Exit(EXIT_PARSE, f"cannot read {path}: {exc.strerror}") from None


def _load(path: str):
    try:
        return parse_instance(_read(path))
    except ParseError as exc:
        raise _Exit(EXIT_PARSE, f"{path}: {exc}") from None


def cmd_minima(args) -> int:
    inst = _load(args.instance)
    prof = successive_minima(inst.body, inst.lattice)
    print("lambda: " + ", ".join(fmt(x) for x in prof.lambdas))
    for i, w in enumerate(prof.witnesses, start=1):
        print(f"witness.{i}: " + ", ".join(fmt(x) for x in w))
    print(f"k_sym: {'none' if prof.k_sym is None else prof.k_sym}")
    print(f"k_asym: {'none' if prof.k_asym is None else prof.k_asym}")
    return EXIT_OK


def cmd_count(args) -> int:
    inst = _load(args.instance)
    print(count_lattice_points(inst.body, inst.lattice))
    return EXIT_OK


def _explicit_entries(report, mus) -> list:
    """Rows for a user-supplied mu; it must be feasible for at least one variant."""
    prof = report.minima
    symmetric = report.instance.symmetric or report.instance.body.is_origin_symmetric
    variants = [("tointon", False)] + ([("tointon-sym", True)] if symmetric else [])
    entries, reasons = [], []
    for name, sym in variants:
        try:
            val = B.tointon_bound(prof, mus, sym)
        except NotApplicable as exc:
            reasons.append(f"{name}: {exc}")
            continue
        except ContractError as exc:
            reasons.append(f"{name}: {exc}")
            continue
        ok = B.satisfied_by(report.count, val)
        entries.append(BoundEntry(f"{name}.mu=explicit", val, True, bool(ok), mu=tuple(mus),
                                  equality=val.value == report.count))
        if not ok:
            raise BoundViolation(f"count {report.count} exceeds {name} with the given mu",
                                 dump=emit_instance(report.instance))
    if not entries:
        raise _Exit(EXIT_MU, "invalid mu: " + "; ".join(reasons))
    return entries


def cmd_bounds(args) -> int:
    inst = _load(args.instance)
    mode = args.mu
    explicit = None
    if mode not in ("auto", "lambda"):
        try:
            explicit = rational_list(mode)
        except ContractError as exc:
            raise _Exit(EXIT_MU, f"invalid mu: {exc}") from None
        if not explicit:
            raise _Exit(EXIT_MU, "invalid mu: empty list")
    report = certify_instance(inst)
    keep = []
    for e in report.entries:
        if e.name.startswith("tointon"):
            if explicit is not None or not e.name.endswith("mu=" + mode):
                continue
        keep.append(e)
    if explicit is not None:
        keep += _explicit_entries(report, explicit)
    report.entries = keep
    shown = {e.name for e in keep}
    report.comparisons = [c for c in report.comparisons if c.left in shown and c.right in shown]
    sys.stdout.write(emit_report(report, timing=args.timing, k_reduce=args.k_reduce))
    return EXIT_OK


def cmd_generate(args) -> int:
    inst = generate_instance(args.dimension, args.symmetric, args.magnitude, args.seed)
    text = emit_instance(inst)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _dims(text: str) -> tuple:
    try:
        dims = tuple(int(x) for x in text.replace(",", " ").split())
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad dimension list {text!r}") from None
    if not dims or any(not 1 <= d <= 5 for d in dims):
        raise argparse.ArgumentTypeError("dimensions must lie in 1..5")
    return dims


def cmd_campaign(args) -> int:
    if args.trials < 1:
        raise _Exit(EXIT_OTHER, "--trials must be at least 1")
    if not 0 <= args.sym_ratio <= 1:
        raise _Exit(EXIT_OTHER, "--sym-ratio must lie in [0, 1]")
    out = Path(args.out) if args.out else None
    reports_file = open(args.reports, "w") if args.reports else None
    on_report = None
    if reports_file is not None:
        def on_report(r):
            reports_file.write(emit_report(r))
            reports_file.write("\n")
    try:
        summary, _ = run_campaign(args.trials, args.dims, args.seed, args.sym_ratio,
                                  workers=args.workers, on_report=on_report)
    except BoundViolation as exc:
        path = (out.with_suffix(".counterexample.txt") if out else Path("counterexample.txt"))
        path.write_text(exc.dump)
        print(f"bound violation: {exc}", file=sys.stderr)
        print(f"counterexample: {path}", file=sys.stderr)
        return EXIT_VIOLATION
    finally:
        if reports_file is not None:
            reports_file.close()
    text = emit_summary(summary, timing=args.timing)
    if out:
        out.write_text(text)
    else:
        sys.stdout.write(text)
    if not summary.claims_hold:
        print("comparison claim failed on at least one instance", file=sys.stderr)
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_limit(args) -> int:
    inst = _load(args.instance)
    table = mink2_limit_check(inst, args.halvings)
    sys.stdout.write(emit_limit_table(table))
    return EXIT_OK


def _load_polygon(path):
    try:
        return parse_polygon(_read(path))
    except ParseError as exc:
        raise _Exit(EXIT_PARSE, f"{path}: {exc}") from None


def cmd_squeeze(args) -> int:
    K = _load_polygon(args.K)
    A = _load_polygon(args.A)
    try:
        direction = rational_list(args.direction)
    except ContractError as exc:
        raise _Exit(EXIT_PARSE, f"bad direction: {exc}") from None
    if len(direction) != 2 or not any(direction):
        raise _Exit(EXIT_PARSE, "direction must be two numbers, not both zero")
    try:
        mu = parse_rational(args.mu)
    except ContractError as exc:
        raise _Exit(EXIT_MU, f"invalid mu: {exc}") from None
    if not 0 < mu <= 1:
        raise _Exit(EXIT_MU, f"invalid mu: {fmt(mu)} is not in (0, 1]")
    for P, name in ((K, "K"), (A, "A")):
        if not P.is_full_dimensional:
            raise _Exit(EXIT_DEGENERATE, f"{name} is not full-dimensional")
    if not all(contains(K, v) for v in A.vertices):
        raise _Exit(EXIT_CONTAINMENT, "A is not contained in K")
    res = squeeze_polygon(K, A, direction, mu)
    lines = ["[squeeze]", f"direction: {fmt(direction[0])}, {fmt(direction[1])}",
             f"mu: {fmt(mu)}",
             f"area_A: {fmt(res.area_A)}", f"area_A_prime: {fmt(res.area_A_prime)}",
             f"area_ratio: {fmt(res.area_A_prime / res.area_A)}",
             f"max_fiber_A: {fmt(res.max_fiber_A)}",
             f"max_fiber_A_prime: {fmt(res.max_fiber_A_prime)}",
             f"max_fiber_ratio: {fmt(res.max_fiber_A_prime / res.max_fiber_A)}",
             f"nested: {str(verify_nesting(res, A, K)).lower()}",
             f"difference_containment: {str(verify_difference_containment(res, A)).lower()}"]
    if args.emit_polygons:
        lines += ["[A_prime]", polygon_text(res.A_prime.vertices)]
    print("\n".join(lines))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="latbound",
                                description="Exact lattice-point counts versus successive-minima bounds.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("minima", help="successive minima of an instance")
    s.add_argument("instance")
    s.set_defaults(func=cmd_minima)

    s = sub.add_parser("count", help="exact number of lattice points in the body")
    s.add_argument("instance")
    s.set_defaults(func=cmd_count)

    s = sub.add_parser("bounds", help="all applicable bounds, checked against the count")
    s.add_argument("instance")
    s.add_argument("--mu", default="auto",
                   help="auto, lambda, or an explicit list such as '1/2,1/2'")
    s.add_argument("--k-reduce", action="store_true",
                   help="also report the k-reduced variants")
    s.add_argument("--timing", action="store_true")
    s.set_defaults(func=cmd_bounds)

    s = sub.add_parser("generate", help="write a random instance")
    s.add_argument("--dimension", type=int, required=True)
    s.add_argument("--symmetric", action="store_true")
    s.add_argument("--magnitude", type=int, default=3)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out")
    s.set_defaults(func=cmd_generate)

    s = sub.add_parser("campaign", help="certify a seeded batch of random instances")
    s.add_argument("--trials", type=int, required=True)
    s.add_argument("--dims", type=_dims, default=(1, 2, 3, 4))
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--sym-ratio", type=float, default=0.5)
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--out", help="summary file (default: stdout)")
    s.add_argument("--reports", help="also write every per-instance report here")
    s.add_argument("--timing", action="store_true")
    s.set_defaults(func=cmd_campaign)

    s = sub.add_parser("limit", help="convergence table for shrinking lattices")
    s.add_argument("instance")
    s.add_argument("--halvings", type=int, default=8)
    s.set_defaults(func=cmd_limit)

    s = sub.add_parser("squeeze", help="contract polygon A along a direction")
    s.add_argument("K")
    s.add_argument("A")
    s.add_argument("--direction", required=True, help="dx,dy")
    s.add_argument("--mu", required=True, help="p/q in (0, 1]")
    s.add_argument("--emit-polygons", action="store_true")
    s.set_defaults(func=cmd_squeeze)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _Exit as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except BoundViolation as exc:
        print(f"bound violation: {exc}", file=sys.stderr)
        sys.stderr.write(exc.dump)
        return EXIT_VIOLATION
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except DegenerateBodyError as exc:
        print(f"degenerate body: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except LatboundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_OTHER


if __name__ == "__main__":
    sys.exit(main())
