#!/usr/bin/env python3
"""Sweep the chart, then chase unresolved outside points along straight branches.

Writes the sweep CSV and prints a tally. Points that lie outside the
conjectured quadrilateral but stay positive to the sweep depth get a second
look with long straight L/R runs, which reach far past breadth-first depth.
"""
import argparse
import csv
import logging
import sys
import time
from collections import Counter
from fractions import Fraction

from shadowmarkoff.positivity import (
    CSV_HEADER,
    ConvexPolygon,
    branch_witness,
    conjectured_quadrilateral,
    grid_scan,
)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--bbox", default="-1/2,-1/2,5/2,3")
    ap.add_argument("--spacing", type=Fraction, default=Fraction(1, 20))
    ap.add_argument("--depth", type=int, default=15)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--branch-length", type=int, default=200)
    ap.add_argument("--margin", type=Fraction, default=Fraction(1, 10),
                    help="only chase points at least this far outside")
    ap.add_argument("-o", "--output", default="region.csv")
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.INFO, format="%(message)s")

    a0, b0, a1, b1 = (Fraction(x) for x in args.bbox.split(","))
    t = time.perf_counter()
    rows = grid_scan(ConvexPolygon.box((a0, b0), (a1, b1)), args.spacing, args.depth, args.workers)
    print(f"{len(rows)} points in {time.perf_counter() - t:.1f}s")
    with open(args.output, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(CSV_HEADER)
        w.writerows(r.csv_fields() for r in rows)

    tally = Counter((r.conjecture, r.positive) for r in rows)
    for (cls, pos), n in sorted(tally.items()):
        print(f"  {cls:8s} {'positive' if pos else 'witness':8s} {n}")

    quad = conjectured_quadrilateral()
    open_rows = [r for r in rows if r.conjecture == "outside" and r.positive
                 and quad.distance2((r.alpha, r.beta)) > args.margin ** 2]
    print(f"{len(open_rows)} points outside by > {args.margin} without a depth-{args.depth} witness")
    lengths = []
    for r in open_rows:
        wit = branch_witness((r.alpha, r.beta), args.branch_length)
        label = wit.label if wit else "-"
        lengths.append(len(wit.word) if wit else None)
        print(f"  ({r.alpha}, {r.beta}): {label}")
    found = [n for n in lengths if n is not None]
    if found:
        print(f"straight-branch witnesses for {len(found)}/{len(open_rows)}, "
              f"lengths {min(found)}..{max(found)}")
    return 0 if len(found) == len(open_rows) else 1


if __name__ == "__main__":
    sys.exit(main())
