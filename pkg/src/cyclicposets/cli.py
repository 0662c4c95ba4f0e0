"""Command-line entry point: ``cyclicposets <subcommand> ...``.

Exit codes: 0 success, 1 a check failed, 2 bad usage or input.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import constructions as C
from .oracle import (
    LimitExceeded,
    cached_level,
    enumerate_posets,
    enumeration_limit,
    enumeration_record,
    min_points_with_cyclic_aut,
    verify_lemma_constraints_exhaustive,
    verify_lemma_two_orbits,
    verify_lemma_z4,
)
from .perm import cycle_type, format_cycles
from .poset import Poset, from_json, to_dot, to_json
from .search import automorphism_group, find_generator, search
from .weights import audit_generator

OK, FAILED, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"expected a comma-separated list of integers, got {text!r}")


def _emit(obj, fmt: str, table_rows: list[tuple[str, object]] | None = None) -> None:
    if fmt == "table" and table_rows is not None:
        width = max((len(k) for k, _ in table_rows), default=0)
        for k, v in table_rows:
            print(f"{k:<{width}}  {v}")
    else:
        print(json.dumps(obj, sort_keys=False))


def _progress(level: int, count: int) -> None:
    print(f"level {level}: {count} posets", file=sys.stderr, flush=True)


def cmd_construct(args) -> int:
    kind, params = args.kind, args.params
    try:
        if kind == "minimal":
            (n,) = map(int, params)
            p = C.minimal_poset(n)
        elif kind == "prime-power":
            pr, r = map(int, params)
            p = C.prime_power_poset(pr, r)
        elif kind == "frucht":
            (n,) = map(int, params)
            p = C.frucht_poset(n)
        elif kind == "circulant":
            if len(params) not in (1, 2):
                raise UsageError("circulant takes n and an optional difference set like 0,1,2,4")
            n = int(params[0])
            s = _int_list(params[1]) if len(params) == 2 else list(C.DIFFERENCE_SET)
            p = C.circulant_two_level(n, s)
        elif kind == "z12":
            if params:
                raise UsageError("z12 takes no parameters")
            p = C.z12_poset()
        else:
            raise UsageError(f"unknown construction {kind!r}")
    except (ValueError, TypeError) as exc:
        raise UsageError(str(exc))
    sys.stdout.write(to_dot(p) if args.format == "dot" else to_json(p) + "\n")
    return OK


def _read_poset(source: str) -> Poset:
    try:
        text = sys.stdin.read() if source == "-" else open(source, encoding="utf-8").read()
        return from_json(text)
    except (OSError, ValueError, IndexError) as exc:
        raise UsageError(f"cannot read poset: {exc}")


def cmd_verify(args) -> int:
    p = _read_poset(args.source)
    res = search(p)
    gd = automorphism_group(p, result=res)
    cyclic = gd.is_cyclic
    ok = cyclic and res.order == args.order
    report = {"points": p.n, "aut_order": res.order, "cyclic": cyclic, "expected": args.order, "verified": ok}
    if cyclic:
        g = find_generator(p)
        report["generator"] = format_cycles(g)
        report["generator_cycle_type"] = list(cycle_type(g).lengths)
    rows = [(k, v) for k, v in report.items()]
    _emit(report, args.format, rows)
    return OK if ok else FAILED


def cmd_beta(args) -> int:
    if args.n < 1:
        raise UsageError("n must be positive")
    value = C.beta(args.n)
    if args.format == "json":
        print(json.dumps({"n": args.n, "beta": value}))
    else:
        print(value)
    return OK


def cmd_audit(args) -> int:
    lengths = _int_list(args.cycle_type)
    try:
        rep = audit_generator(lengths, args.n)
    except ValueError as exc:
        raise UsageError(str(exc))
    if args.format == "table":
        print(f"n = {args.n}, cycle type {{{','.join(map(str, lengths))}}}")
        print(f"{'q':>4}  {'sum w_q':>10}  branch")
        for q, v in rep.per_prime_power_sums.items():
            print(f"{q:>4}  {str(v):>10}  {rep.branch.get(q, '-')}")
        for c in rep.checks:
            print(f"{'ok ' if c.passed else 'FAIL'} {c.label}: {c.value} vs {c.bound}")
        print(f"lower bound on points: {rep.lower_bound_points}")
        print("passed" if rep.passed else "failed")
    else:
        print(json.dumps(rep.as_dict()))
    return OK if rep.passed else FAILED


def cmd_enumerate(args) -> int:
    limit = args.limit if args.limit is not None else enumeration_limit()
    try:
        if args.cache:
            posets = cached_level(args.n, args.cache, limit=limit, workers=args.threads)
            if args.count_only:
                print(len(posets))
                return OK
        elif args.count_only and not args.cyclic:
            print(sum(1 for _ in enumerate_posets(args.n, limit=limit, workers=args.threads, progress=_progress)))
            return OK
        if args.cyclic or args.count_only:
            rec = enumeration_record(args.n, limit=limit, workers=args.threads, progress=_progress)
            if args.count_only:
                print(rec.total)
            else:
                print(json.dumps(rec.as_dict()))
            return OK
        source = posets if args.cache else enumerate_posets(args.n, limit=limit, workers=args.threads)
        for p in source:
            print(to_json(p))
    except LimitExceeded as exc:
        raise UsageError(str(exc))
    return OK


def cmd_verify_lemmas(args) -> int:
    reports = []
    which = args.which
    if which in ("two-orbits", "all"):
        for p in (args.p,) if args.p else (3, 5, 7):
            reports.append(verify_lemma_two_orbits(p).as_dict())
    if which in ("z4", "all"):
        reports.append(verify_lemma_z4().as_dict())
    if which in ("constraints", "all"):
        limit = args.limit if args.limit is not None else 8
        try:
            reports.append(verify_lemma_constraints_exhaustive(limit, workers=args.threads).as_dict())
        except LimitExceeded as exc:
            raise UsageError(str(exc))
    if args.format == "table":
        for r in reports:
            name = r.get("lemma", f"constraints<= {r.get('limit')}")
            print(f"{name}: {'passed' if r['passed'] else 'FAILED'}")
    else:
        for r in reports:
            print(json.dumps(r))
    return OK if all(r["passed"] for r in reports) else FAILED


def cmd_min_points(args) -> int:
    try:
        k = min_points_with_cyclic_aut(args.m, args.limit, workers=args.threads)
    except LimitExceeded as exc:
        raise UsageError(str(exc))
    print(json.dumps({"order": args.m, "limit": args.limit, "min_points": k}))
    return OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cyclicposets", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "dot", "table"), default="json")
    common.add_argument("--threads", type=int, default=1, help="worker processes for enumeration")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", parents=[common], help="build one of the extremal posets")
    p.add_argument("kind", choices=("minimal", "prime-power", "frucht", "circulant", "z12"))
    p.add_argument("params", nargs="*")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", parents=[common], help="check Aut(P) is cyclic of a given order")
    p.add_argument("source", nargs="?", default="-", help="JSON poset file, '-' for stdin")
    p.add_argument("--order", type=int, required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("beta", help="fewest points for Aut cyclic of order n")
    p.add_argument("n", type=int)
    p.add_argument("--format", choices=("json", "table"), default="table")
    p.set_defaults(func=cmd_beta)

    p = sub.add_parser("audit", parents=[common], help="weight audit of a generator cycle type")
    p.add_argument("cycle_type", help="comma list, e.g. 6,6,4,4")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("enumerate", parents=[common], help="posets up to isomorphism")
    p.add_argument("n", type=int)
    p.add_argument("--count-only", action="store_true")
    p.add_argument("--cyclic", action="store_true", help="tally posets by cyclic Aut order")
    p.add_argument("--limit", type=int)
    p.add_argument("--cache", help="directory holding canonical-form cache files")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("verify-lemmas", parents=[common], help="exhaustive orbit-lemma checks")
    p.add_argument("which", choices=("two-orbits", "z4", "constraints", "all"))
    p.add_argument("--p", type=int, choices=(3, 5, 7))
    p.add_argument("--limit", type=int)
    p.set_defaults(func=cmd_verify_lemmas)

    p = sub.add_parser("min-points", parents=[common], help="smallest poset with Aut cyclic of order m")
    p.add_argument("m", type=int)
    p.add_argument("--limit", type=int, required=True)
    p.set_defaults(func=cmd_min_points)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
