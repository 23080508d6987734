#!/usr/bin/env python3
"""Fit query-count scaling exponents across a size ladder.

Runs the pair-query baseline, the sparsifier-based global pipeline, and the
s-t pipeline on sparse random instances, then fits log-log slopes of the
distinct-query counts.  The fitted exponent is a proxy for asymptotic query
complexity: it inherits the usual caveats of finite-size fits, so treat the
numbers as evidence of the gap against the quadratic baseline rather than as
a measured constant.
"""

from __future__ import annotations

import argparse
import csv
import sys

from cutquery.cli import (
    BENCH_DEGREE,
    BENCH_SCALE_GLOBAL,
    BENCH_SCALE_ST,
    BENCH_SIZES,
    CSV_COLUMNS,
    bench_run,
)


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", default=",".join(str(s) for s in BENCH_SIZES))
    ap.add_argument("--trials", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--degree", type=float, default=BENCH_DEGREE)
    ap.add_argument("--suite", choices=("global", "st", "all"), default="all")
    ap.add_argument("--scale-global", type=float, default=BENCH_SCALE_GLOBAL)
    ap.add_argument("--scale-st", type=float, default=BENCH_SCALE_ST)
    ap.add_argument("--csv", default=None, help="write per-run rows here")
    args = ap.parse_args()

    sizes = [int(s) for s in args.sizes.split(",") if s]
    result = bench_run(
        sizes=sizes,
        reps=args.trials,
        seed=args.seed,
        degree=args.degree,
        suite=args.suite,
        scale_global=args.scale_global,
        scale_st=args.scale_st,
    )

    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            writer = csv.DictWriter(fh, fieldnames=CSV_COLUMNS)
            writer.writeheader()
            writer.writerows(result["rows"])

    for row in result["rows"]:
        print(
            f"n={row['n']:>5}  {row['algo']:<15} distinct={row['distinct_queries']:>9}"
            f"  total={row['total_calls']:>9}  wall_ms={row['wall_ms']}"
        )
    print()
    for algo, exp in sorted(result["exponents"].items()):
        print(f"fitted exponent {algo:<15} {exp:.3f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
