"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 an internal consistency check failed.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import time
from contextlib import nullcontext

from . import __version__
from .criterion import CSV_HEADER, classify_range, cross_check, decide
from .curve import burnside_search
from .identities import Expansions, run_suite
from .lfunction import central_value
from .qseries import dump_csv
from .theta import FORMS, MemoryBudgetError, batch_counts

EXIT_OK, EXIT_USAGE, EXIT_INCONSISTENT = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="cubefermat", description="x^3 + y^3 = z^3 over quadratic fields Q(sqrt d)")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("decide", help="apply the representation-count criterion to d")
    s.add_argument("-d", type=int, required=True)
    s.add_argument("--json", action="store_true")

    s = sub.add_parser("search", help="look for an explicit solution via Burnside's parametrization")
    s.add_argument("-d", type=int, required=True)
    s.add_argument("--height", type=_positive, default=50)
    s.add_argument("--json", action="store_true")

    s = sub.add_parser("lvalue", help="central value L(E_d, 1) of the twist")
    s.add_argument("-d", type=int, required=True)
    s.add_argument("--json", action="store_true")

    s = sub.add_parser("check", help="cross-check counts, L-value, root number and point search")
    s.add_argument("-d", type=int, required=True)
    s.add_argument("--height", type=_positive, default=50)
    s.add_argument("--json", action="store_true")

    s = sub.add_parser("table", help="verdicts for all squarefree 2 <= d <= max-d")
    s.add_argument("--max-d", type=_positive, required=True)
    s.add_argument("--format", choices=("json", "csv"), default="csv")
    s.add_argument("--out", default=None)
    s.add_argument("--shards", type=_positive, default=os.cpu_count() or 1)

    s = sub.add_parser("verify-identities", help="check the theta / Hecke / Shimura identities")
    s.add_argument("--depth", type=_positive, default=1000)
    s.add_argument("--dump", default=None, metavar="CSV", help="write the q-expansions used")
    s.add_argument("--json", action="store_true")

    s = sub.add_parser("bench", help="time the theta sieve for all four forms")
    s.add_argument("--N", type=_positive, default=10**6)
    s.add_argument("--shards", type=_positive, default=os.cpu_count() or 1)
    return p


def _squarefree_arg(d: int) -> int:
    from .arith import is_squarefree

    if not is_squarefree(d) or d == 1:
        raise ValueError(f"d = {d} must be a squarefree integer other than 0 and 1")
    return d


def cmd_decide(args) -> int:
    v = decide(args.d)
    print(json.dumps(v.to_json()) if args.json else str(v))
    return EXIT_OK


def cmd_search(args) -> int:
    sol = burnside_search(_squarefree_arg(args.d), args.height)
    if args.json:
        print(json.dumps({"d": args.d, "height": args.height, "solution": None if sol is None else sol.to_json()}))
    elif sol is None:
        print(f"none found at height {args.height}")
    else:
        print(f"{sol}  (k = {sol.k})")
    return EXIT_OK


def cmd_lvalue(args) -> int:
    rep = central_value(_squarefree_arg(args.d))
    print(json.dumps(rep.to_json()) if args.json else str(rep))
    return EXIT_OK


def cmd_check(args) -> int:
    c = cross_check(args.d, args.height)
    if args.json:
        print(json.dumps(c.to_json()))
    else:
        print(str(c.verdict))
        print(str(c.lvalue))
        print("witness:", "none found at height %d" % c.height if c.witness is None else str(c.witness))
        for k, ok in c.flags.items():
            print(f"  {'ok  ' if ok else 'FAIL'} {k}")
    return EXIT_OK if c.consistent else EXIT_INCONSISTENT


def cmd_table(args) -> int:
    ctx = open(args.out, "w", newline="") if args.out else nullcontext(sys.stdout)
    with ctx as fh:
        rows = classify_range(args.max_d, args.shards)
        if args.format == "csv":
            w = csv.writer(fh, lineterminator="\r\n")
            w.writerow(CSV_HEADER)
            for v in rows:
                w.writerow(v.csv_row())
        else:
            fh.write("[")
            for i, v in enumerate(rows):
                fh.write(("," if i else "") + "\n" + json.dumps(v.to_json()))
            fh.write("\n]\n")
    return EXIT_OK


def cmd_verify(args) -> int:
    results = run_suite(args.depth)
    if args.dump:
        E = Expansions.compute(args.depth)
        dump_csv(args.dump, {"theta_Q1_minus_Q2": E.a, "theta_Q3_minus_Q4": E.b, "F": E.F})
    if args.json:
        print(json.dumps([r.__dict__ for r in results]))
    else:
        for r in results:
            print(r.line())
        failed = sum(r.status == "fail" for r in results)
        print(f"{len(results) - failed} of {len(results)} identities hold ({failed} failed)")
    return EXIT_INCONSISTENT if any(r.status == "fail" for r in results) else EXIT_OK


def cmd_bench(args) -> int:
    batch_counts(FORMS["Q1"], 16, 1)  # compile outside the timed region
    points, seconds = {}, {}
    for name, Q in FORMS.items():
        t0 = time.perf_counter()
        points[name] = int(batch_counts(Q, args.N, args.shards).sum())
        seconds[name] = round(time.perf_counter() - t0, 4)
    wall = sum(seconds.values())
    total = sum(points.values())
    out = {
        "N": args.N,
        "shards": args.shards,
        "lattice_points": points,
        "total_points": total,
        # everything that varies between runs lives under "timing"
        "timing": {
            "wall_seconds": round(wall, 4),
            "per_form_seconds": seconds,
            "points_per_second": round(total / wall) if wall else None,
        },
    }
    print(json.dumps(out))
    return EXIT_OK


COMMANDS = {
    "decide": cmd_decide,
    "search": cmd_search,
    "lvalue": cmd_lvalue,
    "check": cmd_check,
    "table": cmd_table,
    "verify-identities": cmd_verify,
    "bench": cmd_bench,
}


def run(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        return COMMANDS[args.command](args)
    except (ValueError, MemoryBudgetError) as exc:
        print(f"cubefermat: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except AssertionError as exc:
        print(f"cubefermat: internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
