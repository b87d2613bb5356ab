#!/usr/bin/env python3
"""Aggregate a gnebench results CSV into per-iteration convergence rows.

Reads the trace CSV written by `gnebench run/compare --out ...` and emits a
tidy CSV with one row per (condition, function, algo, iter): run count and
median/mean/min/max of best-so-far fitness. Intended as plot-ready input for
whatever charting stack sits downstream.
"""

import argparse
import csv
import statistics
import sys
from collections import defaultdict


def condition_label(row):
    shift = float(row["shift"])
    if shift != 0.0:
        return f"{row['condition']}@shift={shift:g}"
    return row["condition"]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("input", help="results CSV from gnebench")
    ap.add_argument("-o", "--out", default="-", help="output CSV path (default stdout)")
    ap.add_argument("--every", type=int, default=1, metavar="K",
                    help="keep every K-th iteration (iter 0 and the last always kept)")
    args = ap.parse_args()
    if args.every < 1:
        ap.error("--every must be >= 1")

    groups = defaultdict(list)  # (cond, fn, algo, iter) -> [best_f]
    last_iter = defaultdict(int)  # (cond, fn, algo) -> max iter seen
    with open(args.input, newline="") as f:
        for row in csv.DictReader(f):
            key = (condition_label(row), row["function"], row["algo"])
            it = int(row["iter"])
            groups[key + (it,)].append(float(row["best_f"]))
            last_iter[key] = max(last_iter[key], it)

    if not groups:
        sys.exit(f"no data rows in {args.input}")

    out = sys.stdout if args.out == "-" else open(args.out, "w", newline="")
    try:
        w = csv.writer(out)
        w.writerow(["condition", "function", "algo", "iter", "runs",
                    "best_f_median", "best_f_mean", "best_f_min", "best_f_max"])
        for key in sorted(groups):
            cond, fn, algo, it = key
            if it % args.every != 0 and it != last_iter[(cond, fn, algo)]:
                continue
            vals = groups[key]
            w.writerow([cond, fn, algo, it, len(vals),
                        f"{statistics.median(vals):.17g}",
                        f"{statistics.fmean(vals):.17g}",
                        f"{min(vals):.17g}", f"{max(vals):.17g}"])
    finally:
        if out is not sys.stdout:
            out.close()


if __name__ == "__main__":
    main()
