"""Command-line front end.

Exit codes: 0 success, 1 a check failed, 2 domain error (ties, undefined
quantities), 64 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from typing import Callable, Sequence

from . import __version__
from .bounds import (
    EVIDENCE_COLUMNS,
    TABLE1,
    TABLE1_COLUMNS,
    EstimateUndefined,
    NoThreshold,
    avoidance_row,
    conjecture_evidence,
    summarize_evidence,
)
from .cache import ResultCache, resolve_cache_path
from .commuter import DEFAULT_DEPTH, CommuterEvaluator, NotAPreimage
from .numerics import (
    HALF,
    ONE,
    ContractViolation,
    ceil_decimal,
    floor_decimal,
    parse_rational,
    round_half_even,
)
from .patterns import DEFAULT_MAX_N, PatternSet, TieError, enumerate_allowed, pat
from .tentmap import TentMap, iterate

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_DOMAIN = 2
EXIT_USAGE = 64

DECIMALS = 12


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse would exit 2
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as err:
        raise argparse.ArgumentTypeError(str(err)) from None


def _decimal(text: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"malformed decimal {text!r}") from None
    if value <= 0:
        raise argparse.ArgumentTypeError("tolerance must be positive")
    return value


def _csv(header: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _mu(args: argparse.Namespace) -> Fraction:
    mu = args.mu
    if not HALF < mu <= ONE:
        raise UsageError(f"--mu must satisfy 1/2 < mu <= 1, got {mu}")
    return mu


def _require(args: argparse.Namespace, *names: str) -> None:
    missing = [f"--{n}" for n in names if getattr(args, n, None) is None]
    if missing:
        raise UsageError(f"missing required option(s): {', '.join(missing)}")


def _cache(args: argparse.Namespace) -> ResultCache | None:
    if args.no_cache:
        return None
    path = resolve_cache_path(args.cache)
    return ResultCache(path) if path else None


# -- computations shared with the cache audit --------------------------------


def compute_allow(params: dict) -> str:
    ps = enumerate_allowed(TentMap(parse_rational(params["mu"])), params["n"], max_n=params["max_n"])
    return json.dumps(ps.to_json())


def compute_table1_row(params: dict) -> str:
    row = avoidance_row(params["n"], parse_rational(params["tol"]))
    return ",".join(row.csv_fields())


RECOMPUTE: dict[str, Callable[[dict], str]] = {
    "allow": compute_allow,
    "table1_row": compute_table1_row,
}


def recompute(command: str, params: dict) -> str:
    return RECOMPUTE[command](params)


def _cached(cache: ResultCache | None, command: str, params: dict) -> str:
    if cache is None:
        return recompute(command, params)
    return cache.get_or_compute(command, params, lambda: recompute(command, params))


# -- commands -----------------------------------------------------------------


def cmd_pat(args: argparse.Namespace) -> int:
    _require(args, "mu", "x", "n")
    mu = _mu(args)
    if not 0 <= args.x <= 1 or args.n < 1:
        raise UsageError("--x must lie in [0, 1] and --n must be >= 1")
    p = pat(args.x, TentMap(mu), args.n)
    if args.out == "json":
        print(json.dumps({"mu": str(mu), "x": str(args.x), "n": args.n, "pattern": str(p)}))
    else:
        print(p)
    return EXIT_OK


def cmd_allow(args: argparse.Namespace) -> int:
    _require(args, "mu", "n")
    mu = _mu(args)
    if not 1 <= args.n <= args.max_n:
        raise UsageError(f"--n must satisfy 1 <= n <= {args.max_n}")
    params = {"mu": str(mu), "n": args.n, "max_n": args.max_n}
    ps = PatternSet.from_json(json.loads(_cached(_cache(args), "allow", params)))
    if args.out == "json":
        print(json.dumps(ps.to_json()))
    elif args.out == "csv":
        sys.stdout.write(_csv(["pattern"], [[s] for s in ps.strings()]))
    else:
        print("\n".join(ps.strings()))
    return EXIT_OK


def cmd_commuter(args: argparse.Namespace) -> int:
    _require(args, "mu", "x")
    mu = _mu(args)
    if not 0 <= args.x <= 1 or args.depth < 1:
        raise UsageError("--x must lie in [0, 1] and --depth must be >= 1")
    enc = CommuterEvaluator(mu).eval(args.x, args.depth)
    record = {"mu": str(mu), "x": str(args.x), "depth": args.depth, "enclosure": enc.to_json()}
    if args.out == "csv":
        sys.stdout.write(_csv(["mu", "x", "depth", "lo", "hi"], [[str(mu), str(args.x), str(args.depth), str(enc.lo), str(enc.hi)]]))
    elif args.out == "text":
        print(f"h({args.x}) in [{floor_decimal(enc.lo, DECIMALS)}, {ceil_decimal(enc.hi, DECIMALS)}]")
        print(f"exact: [{enc.lo}, {enc.hi}]")
    else:
        print(json.dumps(record))
    return EXIT_OK


def cmd_gaps(args: argparse.Namespace) -> int:
    _require(args, "mu")
    mu = _mu(args)
    if args.levels < 1 or args.depth < 1:
        raise UsageError("--levels and --depth must be >= 1")
    gaps = CommuterEvaluator(mu).range_gaps(args.levels, args.depth)
    rows = [[str(g.level), str(g.index), str(g.center), str(g.radius_lo), str(g.radius_hi)] for g in gaps]
    header = ["level", "index", "center", "radius_lo", "radius_hi"]
    if args.out == "json":
        print(json.dumps([dict(zip(header, r)) for r in rows]))
    else:
        sys.stdout.write(_csv(header, rows))
    return EXIT_OK


def cmd_table1(args: argparse.Namespace) -> int:
    if not 4 <= args.nmin <= args.nmax:
        raise UsageError("need 4 <= --nmin <= --nmax (sigma_3 has no threshold)")
    cache = _cache(args)
    lines = [
        _cached(cache, "table1_row", {"n": n, "tol": str(args.tol)})
        for n in range(args.nmin, args.nmax + 1)
    ]
    sys.stdout.write(",".join(TABLE1_COLUMNS) + "\n" + "".join(line + "\n" for line in lines))
    if args.check:
        problems = _mismatches_from_lines(lines)
        for p in problems:
            print(f"MISMATCH {p}", file=sys.stderr)
        return EXIT_FAILED if problems else EXIT_OK
    return EXIT_OK


def _mismatches_from_lines(lines: Sequence[str]) -> list[str]:
    problems = []
    for line in lines:
        n, _, _, exact, estimate, _ = line.split(",")
        if int(n) in TABLE1:
            want_a, want_e = TABLE1[int(n)]
            if exact != want_a:
                problems.append(f"n={n}: mu_exact {exact} != {want_a}")
            if (estimate or None) != want_e:
                problems.append(f"n={n}: mu_estimate {estimate or None} != {want_e}")
    return problems


def cmd_verify(args: argparse.Namespace) -> int:
    from .verify import SUITES, run_suites

    if args.suite != "all" and args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}")
    failed = 0
    for suite, label, ok in run_suites(args.suite):
        print(f"[{suite}] {label}: {'PASS' if ok else 'FAIL'}", flush=True)
        failed += not ok
    if args.audit_cache:
        cache = _cache(args)
        if cache is None:
            raise UsageError("--audit-cache needs --cache or TENTMORPH_CACHE")
        bad = cache.audit(recompute)
        print(f"[cache] recomputation matches stored bytes: {'PASS' if not bad else 'FAIL'}")
        failed += bool(bad)
    return EXIT_FAILED if failed else EXIT_OK


def cmd_conjectures(args: argparse.Namespace) -> int:
    if args.grid < 2 or args.depth < 1:
        raise UsageError("--grid must be >= 2 and --depth >= 1")
    rows = conjecture_evidence(args.grid, args.depth)
    sys.stdout.write(_csv(EVIDENCE_COLUMNS, [r.csv_fields() for r in rows]))
    summary = summarize_evidence(rows)
    print(
        f"increases certified: {summary.certified_increases}, "
        f"inconclusive steps: {summary.inconclusive_steps}, "
        f"certified decreases: {len(summary.certified_decreases)}, "
        f"bound violations: {len(summary.conj3_violations)}",
        file=sys.stderr,
    )
    return EXIT_OK if summary.clean else EXIT_FAILED


def cmd_figure(args: argparse.Namespace) -> int:
    if args.which == 1:
        mu = _mu(args)
        tent = TentMap(mu)
        rows = []
        for k in (1, 2, 3):
            for x, y in iterate(tent, k).vertices():
                rows.append([str(k), round_half_even(x, DECIMALS), round_half_even(y, DECIMALS), str(x), str(y)])
        sys.stdout.write(_csv(["iterate", "x", "y", "x_exact", "y_exact"], rows))
        return EXIT_OK
    if args.which == 2:
        mu = _mu(args)
        if args.grid < 2 or args.depth < 1:
            raise UsageError("--grid must be >= 2 and --depth >= 1")
        ev = CommuterEvaluator(mu)
        xs = [Fraction(i, args.grid - 1) for i in range(args.grid)]
        r = Fraction(1, 2**args.depth)
        rows = []
        for x, v in zip(xs, ev.eval_many(xs, args.depth)):
            lo, hi = max(v - r, Fraction(0)), min(v + r, Fraction(1))
            rows.append([
                round_half_even(x, DECIMALS), floor_decimal(lo, DECIMALS), ceil_decimal(hi, DECIMALS),
                str(x), str(lo), str(hi),
            ])
        sys.stdout.write(_csv(["x", "lo", "hi", "x_exact", "lo_exact", "hi_exact"], rows))
        return EXIT_OK
    return cmd_conjectures(args)


COMMANDS: dict[str, Callable[[argparse.Namespace], int]] = {
    "pat": cmd_pat,
    "allow": cmd_allow,
    "commuter": cmd_commuter,
    "gaps": cmd_gaps,
    "table1": cmd_table1,
    "verify": cmd_verify,
    "conjectures": cmd_conjectures,
    "figure": cmd_figure,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", choices=["csv", "json", "text"], default=None)
    common.add_argument("--cache", metavar="PATH", help="result cache file (TENTMORPH_CACHE overrides)")
    common.add_argument("--no-cache", action="store_true", help="ignore the cache and recompute")

    parser = _Parser(prog="tentmorph", description="Commuters and ordinal patterns of symmetric tent maps.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("pat", parents=[common], help="ordinal pattern of one orbit")
    p.add_argument("--mu", type=_rational)
    p.add_argument("--x", type=_rational)
    p.add_argument("--n", type=int)

    p = sub.add_parser("allow", parents=[common], help="all allowed patterns of one length")
    p.add_argument("--mu", type=_rational)
    p.add_argument("--n", type=int)
    p.add_argument("--max-n", type=int, default=DEFAULT_MAX_N)

    p = sub.add_parser("commuter", parents=[common], help="certified enclosure of h_mu(x)")
    p.add_argument("--mu", type=_rational)
    p.add_argument("--x", type=_rational)
    p.add_argument("--depth", type=int, default=DEFAULT_DEPTH)

    p = sub.add_parser("gaps", parents=[common], help="certified gaps in the range of h_mu")
    p.add_argument("--mu", type=_rational)
    p.add_argument("--levels", type=int, default=4)
    p.add_argument("--depth", type=int, default=DEFAULT_DEPTH)

    p = sub.add_parser("table1", parents=[common], help="avoidance thresholds for sigma_n")
    p.add_argument("--nmin", type=int, default=4)
    p.add_argument("--nmax", type=int, default=12)
    p.add_argument("--tol", type=_decimal, default=Fraction(1, 10**7))
    p.add_argument("--check", action="store_true", help="compare against the published values")

    p = sub.add_parser("verify", parents=[common], help="run property suites")
    p.add_argument("--suite", default="all")
    p.add_argument("--audit-cache", action="store_true", help="recompute sampled cache entries")

    p = sub.add_parser("conjectures", parents=[common], help="evidence table for h_mu(mu)")
    p.add_argument("--grid", type=int, default=200)
    p.add_argument("--depth", type=int, default=DEFAULT_DEPTH)

    p = sub.add_parser("figure", parents=[common], help="plot data for figures 1-3")
    p.add_argument("--which", type=int, choices=[1, 2, 3], required=True)
    p.add_argument("--mu", type=_rational, default=ONE)
    p.add_argument("--depth", type=int, default=DEFAULT_DEPTH)
    p.add_argument("--grid", type=int, default=200)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.out is None:
        args.out = "json" if args.command == "commuter" else "text"
    try:
        return COMMANDS[args.command](args)
    except UsageError as err:
        print(f"tentmorph: error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except TieError as err:
        i, j = err.indices
        print(f"tentmorph: tie: orbit points {i} and {j} coincide", file=sys.stderr)
        return EXIT_DOMAIN
    except (EstimateUndefined, NoThreshold, NotAPreimage, ContractViolation) as err:
        print(f"tentmorph: {err}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
