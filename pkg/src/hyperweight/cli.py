"""``hyperweight`` command line.

Exit codes: 0 success, 1 verification mismatch, 2 usage or parameter error,
3 search budget exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from pathlib import Path

from . import bounds, verify
from .codes import ALIASES, FAMILIES, build_code
from .errors import BudgetExceeded, HyperweightError
from .gf import make_field
from .poly import Polynomial
from .torus import count_common_zeros, enumerate_affine_torus, enumerate_projective_torus
from .weights import default_budget, weight_hierarchy

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

FAMILY_CHOICES = sorted(FAMILIES) + sorted(ALIASES)


# --- rendering -----------------------------------------------------------------


def _cell(v) -> str:
    if isinstance(v, (dict, list)):
        return json.dumps(v, sort_keys=True)
    return "" if v is None else str(v)


def _rows_of(doc: dict) -> list[dict] | None:
    rows = doc.get("rows")
    return rows if isinstance(rows, list) else None


def _columns(rows: list[dict]) -> list[str]:
    cols: list[str] = []
    for row in rows:
        for key in row:
            if key not in cols:
                cols.append(key)
    return cols


def render(doc: dict, fmt: str) -> str:
    """JSON is the source; csv and table are views of the same document."""
    if fmt == "json":
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"
    rows = _rows_of(doc)
    header = {k: v for k, v in doc.items() if k != "rows"}
    if fmt == "csv":
        buf = io.StringIO()
        table = rows if rows is not None else [header]
        writer = csv.DictWriter(buf, fieldnames=_columns(table), lineterminator="\n")
        writer.writeheader()
        for row in table:
            writer.writerow({k: _cell(v) for k, v in row.items()})
        return buf.getvalue()
    lines = [f"{k}: {_cell(v)}" for k, v in header.items()]
    if rows:
        cols = _columns(rows)
        cells = [[_cell(r.get(c)) for c in cols] for r in rows]
        widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(cols)]
        lines.append("  ".join(c.ljust(w) for c, w in zip(cols, widths)))
        lines.extend("  ".join(x.ljust(w) for x, w in zip(row, widths)).rstrip() for row in cells)
    return "\n".join(lines) + "\n"


def _emit(doc: dict, args) -> None:
    sys.stdout.write(render(doc, args.format))


# --- subcommands ---------------------------------------------------------------


def cmd_build(args) -> int:
    fs = make_field(args.q)
    code = build_code(args.family, fs, args.s, args.d)
    if args.emit_generator:
        Path(args.emit_generator).write_text(code.to_csv())
    _emit({"schema_version": 1, **code.describe()}, args)
    return EXIT_OK


def cmd_ghw(args) -> int:
    fs = make_field(args.q)
    code = build_code(args.family, fs, args.s, args.d)
    budget = args.budget if args.budget is not None else default_budget()
    try:
        report = weight_hierarchy(code, args.r_max, budget, args.method, args.threads)
    except BudgetExceeded as err:
        partial = getattr(err, "partial", None)
        if partial is not None:
            _emit(partial.to_json(timings=args.timings), args)
        print(f"budget exceeded: {err}; rerun with --budget {err.required}", file=sys.stderr)
        return EXIT_BUDGET
    _emit(report.to_json(timings=args.timings), args)
    if report.mismatches:
        print(f"{len(report.mismatches)} mismatch(es) between brute force and closed forms", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_zeros(args) -> int:
    fs = make_field(args.q)
    data = json.loads(Path(args.polys).read_text())
    if isinstance(data, dict):
        data = data.get("polys", [data])
    polys = [Polynomial.from_json(p, fs) for p in data]
    pts = enumerate_projective_torus(fs, args.s) if args.projective else enumerate_affine_torus(fs, args.s)
    count = count_common_zeros(polys, pts)
    doc = {
        "schema_version": 1,
        "q": args.q,
        "s": args.s,
        "torus": pts.kind,
        "points": len(pts),
        "polys": len(polys),
        "common_zeros": count,
    }
    _emit(doc, args)
    return EXIT_OK


def cmd_dual_check(args) -> int:
    row = verify.dual_row(make_field(args.q), args.s, args.d, args.projective)
    base = "projective" if args.projective else "affine"
    other = "projective_dual" if args.projective else "delta_prime"
    relation = "==" if row["equal"] else "!="
    row["summary"] = f"{other} {relation} dual({base}) (k={row['dual_k']}, n={row['n']})"
    if args.format == "table":
        sys.stdout.write(row["summary"] + "\n")
    else:
        _emit({"schema_version": 1, **row}, args)
    return EXIT_OK if row["ok"] else EXIT_MISMATCH


def cmd_verify(args) -> int:
    budget = args.budget if args.budget is not None else 10**7
    doc = verify.run_suite(args.suite, args.q_max, args.s_max, args.seed, args.samples, budget)
    _emit(doc, args)
    return EXIT_OK if doc["failed"] == 0 else EXIT_MISMATCH


def cmd_bound(args) -> int:
    variant = args.variant.replace("-", "_")
    zb = bounds.zero_count_bound(args.q, args.s, args.d, args.r, variant)
    doc = {
        "schema_version": 1,
        "q": args.q,
        "s": args.s,
        "d": args.d,
        "r": args.r,
        "variant": variant,
        "zero_count_bound": zb.to_json(),
        "shadow_lower_bound": bounds.shadow_lower_bound(args.q, args.s, args.d, args.r, variant),
    }
    _emit(doc, args)
    return EXIT_OK


# --- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "table"), default="json")
    common.add_argument("--threads", type=int, default=1, help="worker threads for exhaustive searches")
    common.add_argument("--seed", type=int, default=0, help="PRNG seed for randomized sweeps")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="hyperweight", description="Toric and square-free evaluation codes.")
    sub = parser.add_subparsers(dest="command", required=True)

    def params(p, r=False):
        p.add_argument("--q", type=int, required=True)
        p.add_argument("--s", type=int, required=True)
        p.add_argument("--d", type=int, required=True)
        if r:
            p.add_argument("--r", type=int, required=True)

    p = sub.add_parser("build", parents=[common], help="build a code and print its parameters")
    p.add_argument("--family", choices=FAMILY_CHOICES, required=True)
    params(p)
    p.add_argument("--emit-generator", metavar="PATH.csv")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("ghw", parents=[common], help="generalized Hamming weights")
    p.add_argument("--family", choices=FAMILY_CHOICES, required=True)
    params(p)
    p.add_argument("--r-max", type=int, default=None)
    p.add_argument("--method", choices=("brute", "formula", "both"), default="brute")
    p.add_argument("--budget", type=int, default=None, help="max subspaces per search (env HYPERWEIGHT_BUDGET)")
    p.add_argument("--timings", action="store_true", help="include elapsed_ms (output is then not reproducible)")
    p.set_defaults(func=cmd_ghw)

    p = sub.add_parser("zeros", parents=[common], help="count common torus zeros")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--polys", required=True, metavar="FILE.json")
    p.add_argument("--projective", action="store_true")
    p.set_defaults(func=cmd_zeros)

    p = sub.add_parser("dual-check", parents=[common], help="compare the explicit dual with the nullspace")
    params(p)
    p.add_argument("--projective", action="store_true")
    p.set_defaults(func=cmd_dual_check)

    p = sub.add_parser("verify", parents=[common], help="run a verification sweep")
    p.add_argument("--suite", choices=verify.SUITES, required=True)
    p.add_argument("--q-max", type=int, default=3)
    p.add_argument("--s-max", type=int, default=4)
    p.add_argument("--samples", type=int, default=100, help="random families per configuration (bounds suite)")
    p.add_argument("--budget", type=int, default=None, help="skip searches above this many subspaces")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bound", parents=[common], help="zero-count and shadow bounds")
    params(p, r=True)
    p.add_argument("--variant", choices=("homogeneous", "at-most", "at_most"), default="homogeneous")
    p.set_defaults(func=cmd_bound)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except BudgetExceeded as err:
        print(f"budget exceeded: {err}", file=sys.stderr)
        return EXIT_BUDGET
    except (HyperweightError, ValueError, OSError) as err:
        print(f"hyperweight {args.command}: {err}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
