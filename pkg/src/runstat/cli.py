"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage error,
3 oracle enumeration bound exceeded.
"""

from __future__ import annotations

import argparse
import sys

from runstat import closedform, genfun
from runstat.algebra import to_text
from runstat.model import Mode, Specification
from runstat.oracle import OracleBoundError, enumerate_stats, oracle_bound
from runstat.serialize import dumps_csv, dumps_json
from runstat.verify import run_sweep

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_BOUND = 0, 1, 2, 3

GF_PATHS = ("recursive", "matrix", "explicit")


class UsageError(Exception):
    pass


def _spec_arg(text: str) -> Specification:
    try:
        return Specification.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _mode_arg(text: str) -> Mode:
    try:
        return Mode(text)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"invalid mode {text!r} (choose from {', '.join(m.value for m in Mode)})"
        ) from None


def _table(spec: Specification, mode: Mode, path: str):
    if path == "oracle":
        return enumerate_stats(spec).project(mode is Mode.RSL_PERRUNS)
    return genfun.distribution(spec, mode, path)


def _rise_fall(spec: Specification, path: str) -> dict[tuple[int, int], int]:
    if path == "closed":
        return closedform.joint_table(spec)
    return _table(spec, Mode.RS, path).rise_fall()


def cmd_dist(args) -> int:
    table = _table(args.spec, args.mode, args.path)
    if args.format == "csv":
        sys.stdout.write(dumps_csv(table))
    else:
        print(dumps_json(table, args.mode, args.path))
    return EXIT_OK


def cmd_gf(args) -> int:
    if args.path == "oracle":
        coeff = genfun.coefficient_from_table(enumerate_stats(args.spec), args.mode)
    else:
        coeff = genfun.coefficient(args.spec, args.mode, args.path)
    print(to_text(coeff))
    return EXIT_OK


def cmd_closed(args) -> int:
    spec = args.spec
    if args.r < 0 or args.s < 0 or args.r + args.s > spec.n - 1:
        raise UsageError(f"need r, s >= 0 and r + s <= n - 1 = {spec.n - 1}")
    if args.path == "closed":
        value = closedform.count_rises_falls(spec, args.r, args.s)
    else:
        value = _rise_fall(spec, args.path).get((args.r, args.s), 0)
    print(value)
    return EXIT_OK


def cmd_newcomb(args) -> int:
    spec = args.spec
    if args.r < 0 or args.r > spec.n - 1:
        raise UsageError(f"need 0 <= r <= n - 1 = {spec.n - 1}")
    if args.path == "closed":
        value = closedform.newcomb(spec, args.r)
    else:
        value = sum(c for (r, _), c in _rise_fall(spec, args.path).items() if r == args.r)
    print(value)
    return EXIT_OK


def cmd_eulerian(args) -> int:
    if args.k < 1:
        raise UsageError("k must be positive")
    if args.path == "closed":
        row = closedform.eulerian_row(args.k)
    else:
        joint = _rise_fall(Specification((1,) * args.k), args.path)
        row = [sum(c for (r, _), c in joint.items() if r == rr) for rr in range(args.k)]
    print(" ".join(map(str, row)))
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.max_n < 1 or args.max_k < 1:
        raise UsageError("--max-n and --max-k must be positive")
    bound = oracle_bound()
    if args.max_n > bound:
        raise OracleBoundError(args.max_n, bound)
    report = run_sweep(args.max_n, args.max_k, seed=args.seed, jobs=args.jobs)
    print(report.render())
    failure = report.first_failure()
    if failure:
        spec, check, detail = failure
        print(f"FAILED: spec [{spec}] check {check}: {detail}", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="runstat",
        description="Joint distributions of rises, falls, levels and runs over multiset permutations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def spec_opt(p):
        p.add_argument("--spec", type=_spec_arg, required=True, help="multiplicities, e.g. 2,3")

    p = sub.add_parser("dist", help="print the distribution table")
    spec_opt(p)
    p.add_argument("--mode", type=_mode_arg, default=Mode.RS, help="rs, rsb, rslb or rslB")
    p.add_argument("--path", choices=GF_PATHS + ("oracle",), default="recursive")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser("gf", help="print the extracted generating-function coefficient")
    spec_opt(p)
    p.add_argument("--mode", type=_mode_arg, default=Mode.RS)
    p.add_argument("--path", choices=GF_PATHS + ("oracle",), default="recursive")
    p.set_defaults(func=cmd_gf)

    value_paths = ("closed",) + GF_PATHS + ("oracle",)

    p = sub.add_parser("closed", help="A(n; r, s) from the closed form")
    spec_opt(p)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--path", choices=value_paths, default="closed")
    p.set_defaults(func=cmd_closed)

    p = sub.add_parser("newcomb", help="number of arrangements with r rises")
    spec_opt(p)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--path", choices=value_paths, default="closed")
    p.set_defaults(func=cmd_newcomb)

    p = sub.add_parser("eulerian", help="row k of the Eulerian triangle")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--path", choices=value_paths, default="closed")
    p.set_defaults(func=cmd_eulerian)

    p = sub.add_parser("verify", help="cross-validate every path on all small specifications")
    p.add_argument("--max-n", type=int, default=8)
    p.add_argument("--max-k", type=int, default=4)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"runstat: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OracleBoundError as exc:
        print(f"runstat: error: {exc}", file=sys.stderr)
        return EXIT_BOUND


if __name__ == "__main__":
    sys.exit(main())
