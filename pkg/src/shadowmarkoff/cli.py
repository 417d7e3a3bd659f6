"""Command-line front end.

Exit codes: 0 success, 1 a verification failed (or a witness turned up where
positivity was asserted), 2 usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from decimal import ROUND_HALF_EVEN, Context, Decimal
from fractions import Fraction
from typing import List, Optional, Sequence

from . import linearity, positivity, treewalk
from .dualcore import as_rational, check_shadow_equation, format_rational, sigma_of_root

log = logging.getLogger("shadowmarkoff")


class UsageError(Exception):
    pass


def rational(text: str) -> Fraction:
    try:
        return as_rational(text)
    except (ValueError, ZeroDivisionError) as e:
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from e


def rationals(n: int):
    def parse(text: str) -> List[Fraction]:
        parts = text.split(",")
        if len(parts) != n:
            raise argparse.ArgumentTypeError(f"expected {n} comma-separated rationals, got {text!r}")
        return [rational(p) for p in parts]
    return parse


def approx(q: Fraction) -> str:
    """Six significant digits, round-half-even."""
    ctx = Context(prec=6, rounding=ROUND_HALF_EVEN)
    d = ctx.divide(Decimal(q.numerator), Decimal(q.denominator))
    return f"{d:.5E}" if d != 0 else "0"


def _emit(args, text: str) -> None:
    if args.output:
        with open(args.output, "w", newline="") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def _value_text(args, q: Fraction) -> str:
    s = format_rational(q)
    return f"{s}  ~ {approx(q)}" if args.approx else s


def _chart_point(args) -> positivity.ChartPoint:
    if args.point is not None:
        return positivity.ChartPoint(*args.point)
    if args.root is not None:
        alpha, beta, gamma = args.root
        if gamma <= 0:
            raise UsageError("root must have gamma > 0 to sit in the chart gamma = 1")
        return positivity.ChartPoint(alpha / gamma, beta / gamma)
    raise UsageError("give --point or --root")


def _bbox(args) -> positivity.ConvexPolygon:
    x0, y0, x1, y1 = args.bbox
    try:
        return positivity.ConvexPolygon.box((x0, y0), (x1, y1))
    except ValueError as e:
        raise UsageError(str(e)) from e


# -- subcommands -----------------------------------------------------------------

def cmd_path(args) -> int:
    rows = treewalk.path(*args.root, treewalk.parse_word(args.word))
    if args.row is not None:
        if not -len(rows) <= args.row < len(rows):
            raise UsageError(f"row {args.row} out of range (path has {len(rows)} rows)")
        row = rows[args.row]
        if args.field is not None:
            _emit(args, _value_text(args, getattr(row, args.field)) + "\n")
            return 0
        rows = [row]
    if args.format == "json":
        _emit(args, treewalk.to_json(rows) + "\n")
    else:
        lines = [treewalk.serialize(r) for r in rows]
        text = "[" + ",\n ".join(lines) + "]\n"
        if args.approx:
            text += "".join(f"# {i}: gamma ~ {approx(r.gamma)}\n" for i, r in enumerate(rows))
        _emit(args, text)
    return 0


def cmd_tree(args) -> int:
    try:
        tree = treewalk.build_tree(*args.root, args.height, max_height=args.max_height)
    except ValueError as e:
        raise UsageError(str(e)) from e
    if args.format == "json":
        _emit(args, treewalk.to_json(tree) + "\n")
    else:
        _emit(args, treewalk.serialize(tree) + "\n")
    return 0


def cmd_branch(args) -> int:
    seq = treewalk.branch_sequence(*args.root, args.direction, args.count)
    if args.format == "json":
        _emit(args, json.dumps([[format_rational(b), format_rational(s)] for b, s in seq]) + "\n")
    else:
        _emit(args, "".join(f"{format_rational(b)} {format_rational(s)}\n" for b, s in seq))
    return 0


def cmd_verify(args) -> int:
    sigma = sigma_of_root(*args.root)
    checked = negative = 0
    failure = None
    for s in treewalk.path(*args.root)[:2]:
        checked += 1
        if not check_shadow_equation(s.triple(), sigma):
            failure = failure or ("(root)", s)
        negative += sum(v < 0 for v in s.shadows)
    tree = treewalk.build_tree(*args.root, args.depth + 1, max_height=args.max_height)
    for w, s in tree.walk():
        checked += 1
        if not check_shadow_equation(s.triple(), sigma):
            failure = failure or (treewalk.word_str(w), s)
        negative += sum(v < 0 for v in s.shadows)
    lines = [f"nodes checked: {checked}",
             f"sigma: {format_rational(sigma.value)}",
             f"equation failures: {0 if failure is None else 'at least 1'}",
             f"negative shadows: {negative}"]
    if failure is not None:
        lines.append(f"first failure: word {failure[0] or '(prefix)'} node {treewalk.serialize(failure[1])}")
    _emit(args, "\n".join(lines) + "\n")
    if failure is not None or (args.assert_positive and negative):
        return 1
    return 0


def cmd_witness(args) -> int:
    p = _chart_point(args)
    w = positivity.find_witness(p, args.max_depth)
    how = "breadth-first"
    if w is None and args.branch_length:
        w = positivity.branch_witness(p, args.branch_length, stems=("", "L", "R"))
        how = "straight branch"
    if w is None:
        _emit(args, f"no negative shadow to depth {args.max_depth}\n")
        return 0
    lines = [f"point: {format_rational(p.alpha)},{format_rational(p.beta)}",
             f"search: {how}",
             f"word: {w.label}",
             f"row: {w.step}",
             f"field: {w.slot}",
             f"value: {_value_text(args, w.value)}"]
    _emit(args, "\n".join(lines) + "\n")
    return 1 if args.assert_positive else 0


def _region_csv(rows) -> str:
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(positivity.CSV_HEADER)
    for r in rows:
        wr.writerow(r.csv_fields())
    return buf.getvalue()


def cmd_region(args) -> int:
    from .svgplot import region_svg

    bbox = _bbox(args)
    if args.spacing <= 0:
        raise UsageError("spacing must be positive")
    rows = positivity.grid_scan(bbox, args.spacing, args.depth, workers=args.workers)
    bad = [r for r in rows if r.conjecture == "inside" and not r.positive]
    if args.format == "svg":
        pd = args.depth if args.polygon_depth is None else args.polygon_depth
        outer = positivity.polygon_intersect(positivity.halfplanes_to_depth(pd), bbox)
        _emit(args, region_svg(bbox, positivity.conjectured_quadrilateral(), outer, rows))
    else:
        _emit(args, _region_csv(rows))
    counts = {}
    for r in rows:
        key = (r.conjecture, r.positive)
        counts[key] = counts.get(key, 0) + 1
    for (c, pos), n in sorted(counts.items()):
        log.info("%s/%s: %d", c, "positive" if pos else "witness", n)
    if bad:
        log.error("%d strictly interior points have negative shadows", len(bad))
        return 1
    return 0


def cmd_constraints(args) -> int:
    from .svgplot import region_svg

    if args.matrix is not None:
        _emit(args, linearity.transfer_matrix(args.matrix).to_csv())
        return 0
    hs = positivity.halfplanes_to_depth(args.depth)
    if args.format == "svg":
        bbox = _bbox(args)
        outer = positivity.polygon_intersect(hs, bbox)
        _emit(args, region_svg(bbox, positivity.conjectured_quadrilateral(), outer))
        return 0
    if args.format == "polygon":
        outer = positivity.polygon_intersect(hs, _bbox(args))
        _emit(args, "".join(f"{format_rational(v.alpha)},{format_rational(v.beta)}\n"
                            for v in outer.vertices))
        return 0
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(["u", "v", "w"])
    for h in hs:
        wr.writerow([format_rational(x) for x in h])
    _emit(args, buf.getvalue())
    return 0


# -- parser ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="shadowmarkoff",
                                 description="Shadow Markoff trees over dual numbers, exactly.")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, root=True, fmt=("text", "json")):
        if root:
            p.add_argument("--root", type=rationals(3), default=[Fraction(0), Fraction(0), Fraction(1)],
                           help="root shadows alpha,beta,gamma (default 0,0,1)")
        p.add_argument("--format", choices=fmt, default=fmt[0])
        p.add_argument("-o", "--output", help="write here instead of stdout")
        p.add_argument("--approx", action="store_true",
                       help="append 6-digit decimal approximations")

    p = sub.add_parser("path", help="visited six-tuples along a word")
    common(p)
    p.add_argument("--word", default="", help="moves over {l, r}, after the forced r, l")
    p.add_argument("--row", type=int)
    p.add_argument("--field", choices=treewalk.FIELDS)
    p.set_defaults(func=cmd_path)

    p = sub.add_parser("tree", help="perfect shadow tree in nested-list form")
    common(p)
    p.add_argument("--height", type=int, required=True)
    p.add_argument("--max-height", type=int, default=treewalk.DEFAULT_MAX_HEIGHT)
    p.set_defaults(func=cmd_tree)

    p = sub.add_parser("branch", help="(body, shadow) along a straight branch")
    common(p)
    p.add_argument("--direction", choices=("l", "r", "L", "R"), required=True)
    p.add_argument("--count", type=int, default=8)
    p.set_defaults(func=cmd_branch)

    p = sub.add_parser("verify", help="check the shadow equation at every node")
    common(p)
    p.add_argument("--depth", type=int, default=10)
    p.add_argument("--max-height", type=int, default=treewalk.DEFAULT_MAX_HEIGHT)
    p.add_argument("--assert-positive", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("witness", help="search for a negative shadow")
    common(p, root=False)
    p.add_argument("--point", type=rationals(2), help="chart point alpha,beta (gamma = 1)")
    p.add_argument("--root", type=rationals(3), help="root shadows alpha,beta,gamma with gamma > 0")
    p.add_argument("--max-depth", type=int, default=positivity.DEFAULT_DEPTH)
    p.add_argument("--branch-length", type=int, default=0,
                   help="if breadth-first finds nothing, also try straight branches this long")
    p.add_argument("--assert-positive", action="store_true")
    p.set_defaults(func=cmd_witness)

    bbox_default = [x for corner in positivity.DEFAULT_BBOX for x in corner]

    p = sub.add_parser("region", help="classify a lattice of chart points")
    common(p, root=False, fmt=("csv", "svg"))
    p.add_argument("--bbox", type=rationals(4), default=bbox_default,
                   help="alpha0,beta0,alpha1,beta1")
    p.add_argument("--spacing", type=rational, default=positivity.DEFAULT_SPACING)
    p.add_argument("--depth", type=int, default=positivity.DEFAULT_DEPTH)
    p.add_argument("--polygon-depth", type=int, help="depth of the outer polygon drawn in svg")
    p.add_argument("--workers", type=int,
                   default=int(os.environ.get("SHADOWMARKOFF_WORKERS", "1")))
    p.set_defaults(func=cmd_region)

    p = sub.add_parser("constraints", help="half-planes cutting out the positive set")
    common(p, root=False, fmt=("csv", "svg", "polygon"))
    p.add_argument("--depth", type=int, default=8)
    p.add_argument("--bbox", type=rationals(4), default=bbox_default)
    p.add_argument("--matrix", metavar="WORD", help="dump the transfer matrix of WORD as CSV")
    p.set_defaults(func=cmd_constraints)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except (UsageError, ValueError) as e:
        print(f"shadowmarkoff {args.command}: error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
