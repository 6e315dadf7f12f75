"""
Command-line front end.

Exit codes: 0 success, 1 check failure, 2 usage error, 3 search budget
exhausted without a result.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__, codes, defaults, griess, report
from .characters import code_voa_character
from .errors import CapacityError, InputError
from .modules import fusion_table_csv, hamming
from .qseries import (
    J,
    eta,
    ising_char,
    series_to_csv,
    series_to_json,
    theta_D24plus,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# -- codes ------------------------------------------------------------------------


def codes_facts() -> dict:
    D, C = codes.moonshine_D(), codes.moonshine_C()
    wd = codes.weight_distribution(D)
    wc = codes.macwilliams(wd, D.dimension, D.length)
    return {
        "length": D.length,
        "dim_D": D.dimension,
        "dim_C": C.dimension,
        "weight_distribution_D": {str(w): a for w, a in wd.nonzero().items()},
        "weight_distribution_C": {str(w): a for w, a in wc.nonzero().items()},
        "min_weight_D": wd.min_weight(),
        "min_weight_C": wc.min_weight(),
        "D_subset_C": D <= C,
        "C_even": all(r.bit_count() % 2 == 0 for r in C.rows),
        "C_generated_by_weight4": codes.generated_by_weight4(C),
    }


def _facts_text(f: dict) -> str:
    lines = [
        f"length               {f['length']}",
        f"dim D                {f['dim_D']}",
        f"dim C = dim D^perp   {f['dim_C']}",
        f"min weight D         {f['min_weight_D']}",
        f"min weight C         {f['min_weight_C']}",
        f"D subset of C        {f['D_subset_C']}",
        f"C even               {f['C_even']}",
        f"C spanned by wt 4    {f['C_generated_by_weight4']}",
        "weight distribution of D:",
    ]
    lines += [f"  A_{w:<3} = {a}" for w, a in f["weight_distribution_D"].items()]
    lines.append("weight distribution of C (MacWilliams):")
    lines += [f"  A_{w:<3} = {a}" for w, a in f["weight_distribution_C"].items()]
    return "\n".join(lines) + "\n"


def cmd_codes(args) -> int:
    if args.action == "report":
        facts = codes_facts()
        text = json.dumps(facts, indent=2) + "\n" if args.json else _facts_text(facts)
        _emit(text, args.out)
        return EXIT_OK
    if args.code == "D":
        rows = codes.moonshine_D_generators()
        comment = "generator matrix of D, length 48, dimension 7"
    else:
        C = codes.moonshine_C()
        rows = [codes.BinaryWord(C.length, r) for r in C.rows]
        comment = "RREF basis of C = D^perp, length 48, dimension 41"
    _emit(codes.format_code_text(rows, comment), args.out)
    return EXIT_OK


# -- verify -----------------------------------------------------------------------


def _grid(text: str) -> tuple[float, ...]:
    try:
        vals = tuple(float(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad grid {text!r}") from None
    if not vals or not all(0 < q <= 0.99 for q in vals):
        raise argparse.ArgumentTypeError("grid values must lie in (0, 0.99]")
    return vals


def cmd_verify(args) -> int:
    cfg = report.Config(order=args.order, grid=args.grid)
    rep = report.run(args.suite, cfg)
    if args.json:
        Path(args.json).write_text(rep.to_json())
    sys.stdout.write(rep.to_text())
    return EXIT_OK if rep.suite_status == "pass" else EXIT_FAIL


# -- series -----------------------------------------------------------------------

SERIES_NAMES = ("J", "eta", "theta_d24", "ising0", "ising_half", "ising_sixteenth", "mc_character")


def build_series(name: str, order: int):
    if name == "J":
        return J(order)
    if name == "eta":
        return eta(order)
    if name == "theta_d24":
        return theta_D24plus(order)
    if name == "ising0":
        return ising_char(0, order)
    if name == "ising_half":
        return ising_char(Fraction(1, 2), order)
    if name == "ising_sixteenth":
        return ising_char(Fraction(1, 16), order)
    if name == "mc_character":
        D = codes.moonshine_D()
        wc = codes.macwilliams(codes.weight_distribution(D), D.dimension, D.length)
        return code_voa_character(wc, order)
    raise InputError(f"unknown series {name!r}")


def cmd_series(args) -> int:
    s = build_series(args.name, args.order)
    if args.format == "json":
        text = json.dumps(series_to_json(s)) + "\n"
    else:
        text = series_to_csv(s)
    _emit(text, args.out)
    return EXIT_OK


# -- search -----------------------------------------------------------------------


def cmd_search(args) -> int:
    from .search import assignment_search, total_character

    res = assignment_search(args.max_order, args.budget)
    verified = True
    if args.max_order > 0 and res.assignments:
        target = J(args.max_order)
        verified = all(total_character(a, args.max_order).agrees(target) for a in res.assignments)
    out = res.to_json()
    out["verified"] = verified
    text = json.dumps(out, indent=2) + "\n"
    if args.json:
        Path(args.json).write_text(text)
    sys.stdout.write(
        f"assignments: {len(res.assignments)}  complete: {res.complete}  "
        f"nodes: {res.nodes}  elapsed: {res.elapsed:.2f}s\n"
    )
    if res.assignments:
        return EXIT_OK if verified else EXIT_FAIL
    return EXIT_FAIL if res.complete else EXIT_BUDGET


# -- tables -----------------------------------------------------------------------


def cmd_table(args) -> int:
    if args.kind == "griess":
        _emit(griess.table_csv(), args.out)
    else:
        voa = hamming()
        _emit(fusion_table_csv(voa, sorted(voa.labels())), args.out)
    return EXIT_OK


# -- parser -----------------------------------------------------------------------


def _order(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad order {text!r}") from None
    if not 0 <= n <= defaults.MAX_ORDER:
        raise argparse.ArgumentTypeError(f"order must lie in [0, {defaults.MAX_ORDER}]")
    return n


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="moonframe", description=__doc__.strip().splitlines()[0])
    p.add_argument("--version", action="version", version=f"moonframe {__version__}")
    p.add_argument(
        "--parallel",
        action="store_true",
        help="allow module-internal parallelism (results are identical; currently sequential)",
    )
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("codes", help="facts about the length-48 codes, or export them")
    c.add_argument("action", choices=("report", "export"), nargs="?", default="report")
    c.add_argument("--json", action="store_true", help="JSON instead of text (report)")
    c.add_argument("--code", choices=("D", "C"), default="D", help="which code to export")
    c.add_argument("--out", help="output file (default stdout)")
    c.set_defaults(func=cmd_codes)

    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("--suite", choices=("all",) + report.SUITES, default="all")
    v.add_argument("--order", type=_order, default=None)
    v.add_argument("--grid", type=_grid, default=defaults.GRID)
    v.add_argument("--json", help="write the VerificationReport JSON here")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("series", help="print q-series coefficients")
    s.add_argument("name", choices=SERIES_NAMES)
    s.add_argument("--order", type=_order, default=None)
    s.add_argument("--format", choices=("csv", "json"), default="csv")
    s.add_argument("--out")
    s.set_defaults(func=cmd_series)

    a = sub.add_parser("search", help="search for sector assignments matching J")
    a.add_argument("--max-order", type=int, default=defaults.SEARCH_MAX_ORDER)
    a.add_argument("--budget", type=float, default=defaults.SEARCH_BUDGET)
    a.add_argument("--json")
    a.set_defaults(func=cmd_search)

    t = sub.add_parser("table", help="export multiplication or fusion tables as CSV")
    t.add_argument("kind", choices=("griess", "fusion"))
    t.add_argument("--out")
    t.set_defaults(func=cmd_table)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if getattr(args, "order", "absent") is None:
            args.order = defaults.default_order()
        if args.command == "search" and not 0 <= args.max_order <= 8:
            raise InputError("--max-order must lie in [0, 8]")
        if args.command == "search" and args.budget <= 0:
            raise InputError("--budget must be positive")
        return args.func(args)
    except InputError as exc:
        sys.stderr.write(f"moonframe: error: {exc}\n")
        return EXIT_USAGE
    except CapacityError as exc:
        sys.stderr.write(f"moonframe: capacity exceeded ({exc.reason}): {exc}\n")
        return EXIT_FAIL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
