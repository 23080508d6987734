"""Command line front end.

Subcommands generate instances, learn graphs through the oracle, run both
global min cut pipelines and the s-t pipeline, emit sparsifiers, and fit
query-count scaling curves. Every measured run prints one CSV row (stable
schema, header on demand) and can append it to a file; for a fixed seed the
row is byte identical across runs apart from wall_ms.

Exit codes: 0 success, 1 a --verify check failed, 2 usage errors.
"""

from __future__ import annotations

import argparse
import csv
import math
import os
import sys
import time
from fractions import Fraction

import numpy as np

from .discovery import learn_graph
from .global_mincut import global_min_cut_v1, global_min_cut_v2
from .graph import (
    GENERATOR_KINDS,
    SimpleGraph,
    generate,
    read_edge_list,
    write_edge_list,
    write_weighted_edge_list,
)
from .oracle import CutOracle
from .params import DEFAULT_EPS, Tuning
from .reference import deterministic_min_cut, st_min_cut_known
from .rng import make_rng
from .st_mincut import st_min_cut
from .strength import build_sparsifier

CSV_COLUMNS = [
    "instance",
    "n",
    "m",
    "algo",
    "seed",
    "epsilon",
    "scale",
    "distinct_queries",
    "total_calls",
    "cut_value",
    "ref_value",
    "correct",
    "wall_ms",
]

BENCH_SIZES = (64, 128, 256, 512, 1024)
BENCH_DEGREE = 8.0
# pinned so the sampled pipelines sit in their sublinear regime on desk sizes
BENCH_SCALE_GLOBAL = 2e-4
BENCH_SCALE_ST = 1e-4


def _parse_eps(text: str) -> Fraction:
    eps = Fraction(text)
    if not 0 < eps < 1:
        raise argparse.ArgumentTypeError("epsilon must sit strictly between 0 and 1")
    return eps


def _default_seed() -> int:
    return int(os.environ.get("CUTQUERY_SEED", "0"))


def _emit_row(row: dict, path: str | None) -> None:
    writer = csv.DictWriter(sys.stdout, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writerow(row)
    if path:
        fresh = not os.path.exists(path) or os.path.getsize(path) == 0
        with open(path, "a", newline="") as fh:
            out = csv.DictWriter(fh, fieldnames=CSV_COLUMNS, lineterminator="\n")
            if fresh:
                out.writeheader()
            out.writerow(row)


def _row(instance: str, g: SimpleGraph, algo: str, seed: int, **extra) -> dict:
    row = {c: "" for c in CSV_COLUMNS}
    row.update(instance=instance, n=g.n, m=g.m, algo=algo, seed=seed)
    row.update(extra)
    return row


def _pair_learn(oracle: CutOracle) -> SimpleGraph:
    """Baseline learner: one query per vertex plus one per vertex pair."""
    n = oracle.n
    deg = [oracle.query_mask(1 << v) for v in range(n)]
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            both = oracle.query_mask((1 << u) | (1 << v))
            if deg[u] + deg[v] - both == 2:
                edges.append((u, v))
    return SimpleGraph.from_edges(n, edges)


def _cmd_gen(args: argparse.Namespace) -> int:
    params = {
        "n": args.n,
        "p": args.p,
        "k": args.k,
        "inside_p": args.inside_p,
        "clique": args.clique,
        "path": args.path_len,
    }
    params = {k: v for k, v in params.items() if v is not None}
    g = generate(args.kind, params, args.seed)
    write_edge_list(g, args.out)
    print(f"{args.out}: {args.kind} n={g.n} m={g.m} seed={args.seed}")
    return 0


def _cmd_learn(args: argparse.Namespace) -> int:
    g = read_edge_list(args.graph)
    oracle = CutOracle(g)
    t0 = time.perf_counter()
    if args.strategy == "pairs":
        learned: SimpleGraph | None = _pair_learn(oracle)
    else:
        learned = learn_graph(oracle, abort_above=args.abort_above)
    ms = round((time.perf_counter() - t0) * 1000)
    correct = ""
    if args.verify:
        correct = int(learned is not None and learned.edges == g.edges)
    row = _row(
        os.path.basename(args.graph),
        g,
        f"learn-{args.strategy}",
        args.seed,
        distinct_queries=oracle.ledger.distinct_queries,
        total_calls=oracle.ledger.total_calls,
        correct=correct,
        wall_ms=ms,
    )
    _emit_row(row, args.csv)
    if learned is None:
        print(f"# aborted above {args.abort_above} edges", file=sys.stderr)
    return 0 if correct in ("", 1) else 1


def _cmd_global(args: argparse.Namespace) -> int:
    g = read_edge_list(args.graph)
    oracle = CutOracle(g)
    rng = make_rng(args.seed, "global", args.algo)
    tuning = Tuning(scale=args.scale_constants)
    solver = global_min_cut_v1 if args.algo == "v1" else global_min_cut_v2
    t0 = time.perf_counter()
    cut = solver(oracle, args.epsilon, rng, tuning=tuning)
    ms = round((time.perf_counter() - t0) * 1000)
    ref = ""
    correct = ""
    if args.verify:
        ref = deterministic_min_cut(g.to_weighted()).value
        correct = int(cut.value == ref and g.cut_value_mask(cut.side_mask()) == cut.value)
    row = _row(
        os.path.basename(args.graph),
        g,
        f"global-{args.algo}",
        args.seed,
        epsilon=str(args.epsilon),
        scale=args.scale_constants,
        distinct_queries=oracle.ledger.distinct_queries,
        total_calls=oracle.ledger.total_calls,
        cut_value=cut.value,
        ref_value=ref,
        correct=correct,
        wall_ms=ms,
    )
    _emit_row(row, args.csv)
    return 0 if correct in ("", 1) else 1


def _cmd_st(args: argparse.Namespace) -> int:
    g = read_edge_list(args.graph)
    oracle = CutOracle(g)
    rng = make_rng(args.seed, "st", args.source, args.sink)
    tuning = Tuning(scale=args.scale_constants)
    t0 = time.perf_counter()
    cut = st_min_cut(oracle, args.source, args.sink, rng, epsilon=args.epsilon, tuning=tuning)
    ms = round((time.perf_counter() - t0) * 1000)
    ref = ""
    correct = ""
    if args.verify:
        ref = st_min_cut_known(g.to_weighted(), args.source, args.sink).value
        correct = int(
            cut.value == ref
            and g.cut_value_mask(cut.side_mask()) == cut.value
            and args.source in cut.side
            and args.sink not in cut.side
        )
    row = _row(
        os.path.basename(args.graph),
        g,
        "st",
        args.seed,
        epsilon="" if args.epsilon is None else str(args.epsilon),
        scale=args.scale_constants,
        distinct_queries=oracle.ledger.distinct_queries,
        total_calls=oracle.ledger.total_calls,
        cut_value=cut.value,
        ref_value=ref,
        correct=correct,
        wall_ms=ms,
    )
    _emit_row(row, args.csv)
    return 0 if correct in ("", 1) else 1


def _cmd_sparsify(args: argparse.Namespace) -> int:
    g = read_edge_list(args.graph)
    oracle = CutOracle(g)
    rng = make_rng(args.seed, "sparsify")
    tuning = Tuning(scale=args.scale_constants)
    t0 = time.perf_counter()
    h = build_sparsifier(oracle, args.epsilon, rng, tuning)
    ms = round((time.perf_counter() - t0) * 1000)
    if args.out:
        write_weighted_edge_list(h, args.out)
    row = _row(
        os.path.basename(args.graph),
        g,
        "sparsify",
        args.seed,
        epsilon=str(args.epsilon),
        scale=args.scale_constants,
        distinct_queries=oracle.ledger.distinct_queries,
        total_calls=oracle.ledger.total_calls,
        wall_ms=ms,
    )
    _emit_row(row, args.csv)
    print(f"# sparsifier edges={h.m} total_weight={h.total_weight()}", file=sys.stderr)
    return 0


def fitted_exponent(sizes: list[int], counts: list[float]) -> float:
    """Least squares slope of log(count) against log(n)."""
    if len(sizes) < 2:
        return float("nan")
    xs = np.log(np.array(sizes, dtype=float))
    ys = np.log(np.array(counts, dtype=float))
    return float(np.polyfit(xs, ys, 1)[0])


def bench_run(
    sizes=BENCH_SIZES,
    reps: int = 3,
    seed: int = 0,
    degree: float = BENCH_DEGREE,
    suite: str = "all",
    scale_global: float = BENCH_SCALE_GLOBAL,
    scale_st: float = BENCH_SCALE_ST,
    emit=None,
) -> dict:
    """Measure distinct-query growth on sparse instances of increasing size.

    One family (gnp with expected degree `degree`), three runners per
    instance: the quadratic pair-query learner as the baseline, the
    sparsifier-based global pipeline, and the s-t pipeline, the latter two
    with all log-factor constants shrunk so their sampled regime is visible
    at desk sizes. Returns per-run rows and the fitted log-log exponents.
    """
    rows: list[dict] = []
    per_algo: dict[str, dict[int, list[int]]] = {}
    for n in sizes:
        for rep in range(reps):
            g = generate("gnp", {"n": n, "p": min(1.0, degree / n)}, derive := (seed * 1000003 + n * 101 + rep))
            name = f"gnp-deg{degree:g}-n{n}-r{rep}"
            runs = [("baseline-pairs", None, "")]
            if suite in ("global", "all"):
                runs.append(("global-v2", scale_global, str(DEFAULT_EPS)))
            if suite in ("st", "all"):
                runs.append(("st", scale_st, ""))
            for algo, scale, eps_text in runs:
                oracle = CutOracle(g)
                t0 = time.perf_counter()
                if algo == "baseline-pairs":
                    _pair_learn(oracle)
                elif algo == "global-v2":
                    rng = make_rng(seed, "bench", algo, n, rep)
                    global_min_cut_v2(
                        oracle, DEFAULT_EPS, rng, tuning=Tuning(scale=scale)
                    )
                else:
                    rng = make_rng(seed, "bench", algo, n, rep)
                    st_min_cut(oracle, 0, g.n - 1, rng, tuning=Tuning(scale=scale))
                ms = round((time.perf_counter() - t0) * 1000)
                row = _row(
                    name,
                    g,
                    algo,
                    derive,
                    epsilon=eps_text,
                    scale="" if scale is None else scale,
                    distinct_queries=oracle.ledger.distinct_queries,
                    total_calls=oracle.ledger.total_calls,
                    wall_ms=ms,
                )
                rows.append(row)
                if emit:
                    emit(row)
                per_algo.setdefault(algo, {}).setdefault(n, []).append(
                    oracle.ledger.distinct_queries
                )
    exponents = {}
    for algo, by_n in per_algo.items():
        ns = sorted(by_n)
        means = [sum(by_n[n]) / len(by_n[n]) for n in ns]
        exponents[algo] = fitted_exponent(ns, means)
    return {"rows": rows, "exponents": exponents}


def _cmd_bench(args: argparse.Namespace) -> int:
    sizes = [int(s) for s in args.sizes.split(",") if s]
    scale_global = args.scale_global
    scale_st = args.scale_st
    if args.scale_constants is not None:
        scale_global = scale_st = args.scale_constants
    result = bench_run(
        sizes=sizes,
        reps=args.trials,
        seed=args.seed,
        suite=args.suite,
        scale_global=scale_global,
        scale_st=scale_st,
        emit=lambda row: _emit_row(row, args.csv),
    )
    for algo, exp in sorted(result["exponents"].items()):
        print(f"# exponent {algo} {exp:.3f}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="cutquery", description=__doc__)
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate an instance and write an edge list")
    p.add_argument("--kind", choices=GENERATOR_KINDS, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=int, default=_default_seed())
    p.add_argument("--n", type=int)
    p.add_argument("--p", type=float)
    p.add_argument("--k", type=int)
    p.add_argument("--inside-p", dest="inside_p", type=float)
    p.add_argument("--clique", type=int)
    p.add_argument("--path-len", dest="path_len", type=int)
    p.set_defaults(run=_cmd_gen)

    p = sub.add_parser("learn", help="reconstruct a graph through the oracle")
    p.add_argument("--in", "--graph", dest="graph", required=True, metavar="EDGELIST")
    p.add_argument("--strategy", choices=("splits", "pairs"), default="splits")
    p.add_argument("--abort-above", dest="abort_above", type=int)
    p.add_argument("--seed", type=int, default=_default_seed())
    p.add_argument("--verify", action="store_true")
    p.add_argument("--csv")
    p.set_defaults(run=_cmd_learn)

    p = sub.add_parser("global-mincut", help="exact global min cut via queries")
    p.add_argument("--in", "--graph", dest="graph", required=True, metavar="EDGELIST")
    p.add_argument("--algo", choices=("v1", "v2"), default="v2")
    p.add_argument("--epsilon", type=_parse_eps, default=DEFAULT_EPS)
    p.add_argument("--seed", type=int, default=_default_seed())
    p.add_argument("--scale-constants", dest="scale_constants", type=float, default=1.0)
    p.add_argument("--verify", action="store_true")
    p.add_argument("--csv")
    p.set_defaults(run=_cmd_global)

    p = sub.add_parser("st-mincut", help="exact min s-t cut via queries")
    p.add_argument("--in", "--graph", dest="graph", required=True, metavar="EDGELIST")
    p.add_argument("--source", type=int, required=True)
    p.add_argument("--sink", type=int, required=True)
    p.add_argument("--epsilon", type=_parse_eps, default=None)
    p.add_argument("--seed", type=int, default=_default_seed())
    p.add_argument("--scale-constants", dest="scale_constants", type=float, default=1.0)
    p.add_argument("--verify", action="store_true")
    p.add_argument("--csv")
    p.set_defaults(run=_cmd_st)

    p = sub.add_parser("sparsify", help="build a strength sparsifier via queries")
    p.add_argument("--in", "--graph", dest="graph", required=True, metavar="EDGELIST")
    p.add_argument("--epsilon", type=_parse_eps, default=DEFAULT_EPS)
    p.add_argument("--out")
    p.add_argument("--seed", type=int, default=_default_seed())
    p.add_argument("--scale-constants", dest="scale_constants", type=float, default=1.0)
    p.add_argument("--csv")
    p.set_defaults(run=_cmd_sparsify)

    p = sub.add_parser("bench", help="fit query-count scaling exponents")
    p.add_argument("--suite", choices=("global", "st", "all"), default="all")
    p.add_argument("--sizes", default=",".join(str(s) for s in BENCH_SIZES))
    p.add_argument("--trials", type=int, default=3)
    p.add_argument("--seed", type=int, default=_default_seed())
    p.add_argument("--scale-constants", dest="scale_constants", type=float, default=None)
    p.add_argument("--scale-global", dest="scale_global", type=float, default=BENCH_SCALE_GLOBAL)
    p.add_argument("--scale-st", dest="scale_st", type=float, default=BENCH_SCALE_ST)
    p.add_argument("--csv")
    p.set_defaults(run=_cmd_bench)

    return top


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.run(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
