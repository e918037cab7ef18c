"""Command-line interface.

Exit codes: 0 when every check passes, 1 when a counterexample was found,
2 for usage or configuration errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from contextlib import contextmanager
from typing import Sequence

from . import congruences, identities
from .eta import p8_oracle, p8_series
from .series import Ring
from .tables import M, X, format_factored

FORMAT_ENV = "EIGHTCOLOR_FORMAT"
FORMATS = ("text", "json", "csv")
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _nonnegative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {value}")
    return value


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    default_format = os.environ.get(FORMAT_ENV, "text")
    if default_format not in FORMATS:
        default_format = "text"

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default=default_format,
                        help=f"output format (default from ${FORMAT_ENV}, else text)")
    common.add_argument("--output", "-o", help="write to this file instead of stdout")

    ring = argparse.ArgumentParser(add_help=False)
    ring.add_argument("--ring", choices=[r.value for r in Ring], default=None,
                      help="coefficient ring")
    ring.add_argument("--exact", action="store_true", help="same as --ring exact")

    parser = argparse.ArgumentParser(
        prog="eightcolor",
        description="Compute p_8(n) and check its generating functions and congruences.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("p8", parents=[common, ring], help="tabulate p_8(n)")
    p.add_argument("--n-max", type=_nonnegative, default=100)
    p.add_argument("--check-oracle", action="store_true",
                   help="cross-check against the partition-counting oracle")

    v = sub.add_parser("verify", parents=[common, ring], help="verify identities")
    group = v.add_mutually_exclusive_group(required=True)
    group.add_argument("--tag", action="append", dest="tags", metavar="TAG",
                       help="check to run (repeatable); see --list")
    group.add_argument("--all", action="store_true", help="run every check")
    group.add_argument("--list", action="store_true", help="list known tags")
    v.add_argument("--order", type=_nonnegative, default=200)
    v.add_argument("--alpha", type=_positive, default=1)
    v.add_argument("--j-max", type=_positive, default=12)
    v.add_argument("--alpha-max", type=_positive, default=8)

    s = sub.add_parser("scan", parents=[common, ring], help="scan the congruence families")
    s.add_argument("--alpha-max", type=_positive, default=1)
    s.add_argument("--n-max", type=_nonnegative, default=100)
    s.add_argument("--no-exceptions", action="store_true",
                   help="also test n excluded by a family's exception predicate")
    s.add_argument("--max-order", type=_positive, default=congruences.DEFAULT_MAX_ORDER)

    t = sub.add_parser("table", parents=[common], help="dump the m or x table")
    t.add_argument("which", choices=["m", "x"])
    t.add_argument("--rows", type=_positive, default=8)
    t.add_argument("--cols", type=_positive, default=8)
    t.add_argument("--plain", action="store_true", help="plain integers instead of 2^a * b")
    return parser


def _ring(args, default: Ring) -> Ring:
    if getattr(args, "exact", False):
        if args.ring not in (None, Ring.EXACT.value):
            raise UsageError("--exact conflicts with --ring mod64")
        return Ring.EXACT
    return Ring(args.ring) if args.ring else default


@contextmanager
def _sink(path: str | None):
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def _csv(rows: Sequence[Sequence], header: Sequence[str]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def cmd_p8(args) -> tuple[str, int]:
    ring = _ring(args, Ring.EXACT)
    values = p8_series(ring, args.n_max).tolist()
    code = EXIT_OK
    notes = []
    if args.check_oracle:
        expected = p8_oracle(args.n_max)
        if ring is Ring.MOD64:
            expected = [v % (1 << 64) for v in expected]
        bad = next((n for n, (a, b) in enumerate(zip(values, expected)) if a != b), None)
        if bad is not None:
            code = EXIT_FAIL
            notes.append(f"oracle mismatch at n={bad}: series {values[bad]}, oracle {expected[bad]}")
        else:
            notes.append(f"oracle agrees for n <= {args.n_max}")
    for note in notes:
        print(note, file=sys.stderr)

    if args.format == "json":
        return json.dumps([{"n": n, "value": v} for n, v in enumerate(values)]) + "\n", code
    if args.format == "csv":
        return _csv(list(enumerate(values)), ("n", "value")), code
    return "".join(f"{n} {v}\n" for n, v in enumerate(values)), code


def cmd_verify(args) -> tuple[str, int]:
    if args.list:
        return "\n".join(identities.known_tags() + ("all",)) + "\n", EXIT_OK
    ring = _ring(args, Ring.EXACT)
    tags = ["all"] if args.all else args.tags
    try:
        reports = identities.run_checks(tags, args.order, alpha=args.alpha,
                                        j_max=args.j_max, alpha_max=args.alpha_max, ring=ring)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    code = EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL
    if args.format == "json":
        return json.dumps([r.to_dict() for r in reports]) + "\n", code
    if args.format == "csv":
        rows = [(r.tag, r.order, r.mode, r.passed, r.first_fail_index or "",
                 "" if r.lhs_coeff is None else r.lhs_coeff,
                 "" if r.rhs_coeff is None else r.rhs_coeff) for r in reports]
        return _csv(rows, ("tag", "order", "mode", "pass", "first_fail_index",
                           "lhs_coeff", "rhs_coeff")), code
    return "".join(r.summary() + "\n" for r in reports), code


def cmd_scan(args) -> tuple[str, int]:
    ring = _ring(args, Ring.MOD64)
    try:
        results = congruences.scan_all(args.alpha_max, args.n_max, ring,
                                       use_exceptions=not args.no_exceptions,
                                       max_order=args.max_order)
    except congruences.SeriesOrderError as exc:
        raise UsageError(str(exc)) from None
    code = EXIT_OK if all(r.passed for r in results) else EXIT_FAIL
    if args.format == "json":
        return json.dumps([r.to_dict() for r in results]) + "\n", code
    if args.format == "csv":
        rows = []
        for r in results:
            c = r.counterexample or {}
            rows.append((r.id, r.alpha, r.n_max, r.verdict, c.get("n", ""),
                         c.get("argument", ""), c.get("v2", ""), len(r.skipped)))
        return _csv(rows, ("id", "alpha", "n_max", "verdict", "fail_n", "fail_argument",
                           "fail_v2", "skipped")), code
    return "".join(r.summary() + "\n" for r in results), code


def table_window(which: str, rows: int, cols: int) -> list[list[int]]:
    table = M if which == "m" else X
    return [[table(j, k) for k in range(1, cols + 1)] for j in range(1, rows + 1)]


def cmd_table(args) -> tuple[str, int]:
    window = table_window(args.which, args.rows, args.cols)
    show = str if args.plain else format_factored
    if args.format == "json":
        cells = [{"j": j, "k": k, "value": v, "factored": format_factored(v)}
                 for j, row in enumerate(window, 1) for k, v in enumerate(row, 1)]
        return json.dumps(cells) + "\n", EXIT_OK
    if args.format == "csv":
        rows = [(j, k, show(v)) for j, row in enumerate(window, 1) for k, v in enumerate(row, 1)]
        return _csv(rows, ("j", "k", "value")), EXIT_OK
    cells = [[show(v) for v in row] for row in window]
    width = max(len(c) for row in cells for c in row)
    return "".join("  ".join(c.rjust(width) for c in row) + "\n" for row in cells), EXIT_OK


COMMANDS = {"p8": cmd_p8, "verify": cmd_verify, "scan": cmd_scan, "table": cmd_table}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        text, code = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"eightcolor: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        with _sink(args.output) as out:
            out.write(text)
    except OSError as exc:
        print(f"eightcolor: error: cannot write output: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return code


if __name__ == "__main__":
    sys.exit(main())
