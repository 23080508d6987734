"""Contraction dynamics and interface subsampling over the oracle.

All state lives in a `ContractionState`; group boundary degrees are kept
current, so the number of edges running between groups is always available
without queries. Sampling a uniform inter-group edge costs about two fresh
queries per descent level, and the pair count of the sampled pair falls out
of the last level for free.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .discovery import learn_intergroup_edges
from .graph import ContractionState, WeightedGraph, bits_of
from .oracle import OracleBase
from .rng import binomial_count, weighted_index

# Bernoulli-sum binomials stay exact up to this many trials; beyond it the
# float-parameter sampler takes over (correctness is never asserted there)
EXACT_BINOMIAL_LIMIT = 4096

# contraction runs must stay within this many queries per merge per log n
KARGER_QUERY_FACTOR = 6


def binomial_exact(rng: random.Random, n: int, p: Fraction) -> int:
    """Binomial(n, p) with a rational p, exact for moderate n."""
    if n < 0:
        raise ValueError("negative trial count")
    if p <= 0:
        return 0
    if p >= 1:
        return n
    if n <= EXACT_BINOMIAL_LIMIT:
        num, den = p.numerator, p.denominator
        return sum(1 for _ in range(n) if rng.randrange(den) < num)
    return binomial_count(rng, n, float(p))


def descend_to_group(
    oracle: OracleBase,
    anchor_mask: int,
    group_masks: list[int],
    total: int,
    rng: random.Random,
) -> tuple[int, int]:
    """Pick an index into `group_masks` with probability proportional to the
    edge count between the anchor and that group; also return that count.

    `total` is the known edge count between the anchor and all the groups
    together. Splits are positional, so repeated descents requery the same
    prefixes and the memo absorbs them.
    """
    if total <= 0:
        raise ValueError("anchor has no edges into the candidate groups")
    lo, hi = 0, len(group_masks)
    while hi - lo > 1:
        mid = (lo + hi + 1) // 2
        low_mask = 0
        for i in range(lo, mid):
            low_mask |= group_masks[i]
        c_low = oracle.count_between_masks(anchor_mask, low_mask)
        if rng.randrange(total) < c_low:
            hi, total = mid, c_low
        else:
            lo, total = mid, total - c_low
    return lo, total


def sample_interface_pair(
    oracle: OracleBase,
    state: ContractionState,
    rng: random.Random,
) -> tuple[tuple[int, int], int]:
    """Uniform random inter-group edge, reported as (root, root, pair count).

    First endpoint's group is drawn proportionally to boundary degree, then
    the partner group by weighted descent. Each of the E interface edges
    comes up with probability exactly 1/E.
    """
    roots = state.roots
    degs = [state.degree(r) for r in roots]
    total = sum(degs)
    if total == 0:
        raise ValueError("no interface edges to sample")
    gi = weighted_index(rng, degs, total)
    g = roots[gi]
    others = [r for r in roots if r != g]
    masks = [state.group_mask(r) for r in others]
    hi, pair_count = descend_to_group(
        oracle, state.group_mask(g), masks, degs[gi], rng
    )
    h = others[hi]
    return ((g, h) if g < h else (h, g)), pair_count


def singleton_state(oracle: OracleBase) -> ContractionState:
    """Fresh all-singletons state with every degree queried and recorded."""
    degrees = [oracle.vertex_degree(v) for v in range(oracle.n)]
    return ContractionState(oracle.n, degrees)


def karger_until(
    oracle: OracleBase,
    target_edges: int,
    rng: random.Random,
    state: ContractionState | None = None,
) -> ContractionState:
    """Contract uniform random inter-group edges until at most
    `target_edges` edges cross between groups, or two groups remain.

    Starts from all singletons unless a state is passed (which is then
    mutated in place). Each merge costs one descent plus at most one fresh
    refresh query; the whole run must stay within a fixed query budget per
    merge, which is asserted against the ledger.
    """
    if state is None:
        state = singleton_state(oracle)
    before = oracle.ledger.distinct_queries
    merges = 0
    while state.group_count() > 2:
        e = state.interface_edge_count()
        if e <= target_edges or e == 0:
            break
        (g, h), _ = sample_interface_pair(oracle, state, rng)
        root = state.contract(g, h)
        state.set_degree(root, oracle.query_mask(state.group_mask(root)))
        merges += 1
    spent = oracle.ledger.distinct_queries - before
    log_n = max(1, (max(2, oracle.n) - 1).bit_length())
    assert spent <= KARGER_QUERY_FACTOR * max(1, merges) * log_n + oracle.n, (
        f"contraction overspent: {spent} fresh queries for {merges} merges"
    )
    return state


def learn_pair_counts(
    oracle: OracleBase,
    masks: list[int],
    abort_above: int | None = None,
    edge_hint: int | None = None,
) -> dict[tuple[int, int], int] | None:
    """Edge multiplicity between every pair of groups, keyed by index pair.

    Two strategies: count every pair directly (quadratic in the number of
    groups, flat in the edge count) or learn the individual edges by descent
    (log-linear in the edge count). `edge_hint`, when available, picks the
    cheaper one. Zero pairs are dropped. Returns None once the total edge
    count exceeds `abort_above`.
    """
    k = len(masks)
    pair_cost = k + k * (k - 1) // 2
    use_pairs = True
    if edge_hint is not None:
        log_n = max(1, (max(2, oracle.n) - 1).bit_length())
        use_pairs = pair_cost <= 3 * k + edge_hint * (2 * log_n + 2)
    if use_pairs:
        counts: dict[tuple[int, int], int] = {}
        found = 0
        for i in range(k):
            for j in range(i + 1, k):
                w = oracle.count_between_masks(masks[i], masks[j])
                if w:
                    counts[(i, j)] = w
                    found += w
                    if abort_above is not None and found > abort_above:
                        return None
        return counts
    edges = learn_intergroup_edges(oracle, masks, abort_above=abort_above)
    if edges is None:
        return None
    owner = {v: i for i, m in enumerate(masks) for v in bits_of(m)}
    counts = {}
    for u, v in edges:
        a, b = owner[u], owner[v]
        key = (a, b) if a < b else (b, a)
        counts[key] = counts.get(key, 0) + 1
    return counts


def thin_pairs(
    weights: dict[tuple[int, int], int],
    q: Fraction,
    rng: random.Random,
) -> dict[tuple[int, int], int]:
    """Keep each parallel edge independently with probability q.

    Independent per-pair binomials are distributionally identical to
    flipping a coin for every edge one by one.
    """
    if q >= 1:
        return dict(weights)
    kept: dict[tuple[int, int], int] = {}
    for pair in sorted(weights):
        k = binomial_exact(rng, weights[pair], q)
        if k:
            kept[pair] = k
    return kept


def _draw_interface_slots(
    oracle: OracleBase,
    state: ContractionState,
    count: int,
    rng: random.Random,
) -> dict[tuple[int, int], int]:
    """`count` interface edges drawn uniformly without replacement.

    Uniform draws with rejection against per-pair tallies: a draw landing on
    pair P is kept with probability (w_P - taken_P) / w_P, which leaves a
    uniform choice among the not-yet-taken edge slots. Pair counts come out
    of the sampling descent at no extra cost.
    """
    taken: dict[tuple[int, int], int] = {}
    pair_counts: dict[tuple[int, int], int] = {}
    drawn = 0
    while drawn < count:
        pair, w = sample_interface_pair(oracle, state, rng)
        pair_counts.setdefault(pair, w)
        w = pair_counts[pair]
        t = taken.get(pair, 0)
        if rng.randrange(w) < w - t:
            taken[pair] = t + 1
            drawn += 1
    return taken


def _hypergeometric_split(
    weights: dict[tuple[int, int], int],
    count: int,
    rng: random.Random,
) -> dict[tuple[int, int], int]:
    """`count` slots without replacement from known pair counts, no queries."""
    remaining = dict(weights)
    pairs = sorted(remaining)
    taken: dict[tuple[int, int], int] = {}
    total = sum(remaining.values())
    if count > total:
        raise ValueError("asked for more slots than exist")
    for _ in range(count):
        counts = [remaining[p] for p in pairs]
        i = weighted_index(rng, counts, total)
        remaining[pairs[i]] -= 1
        taken[pairs[i]] = taken.get(pairs[i], 0) + 1
        total -= 1
    return taken


def uniform_subsample(
    oracle: OracleBase,
    state: ContractionState,
    p: Fraction,
    rng: random.Random,
    cap: int | None = None,
) -> WeightedGraph:
    """Bernoulli(p) subsample of the contracted multigraph.

    Vertex i of the result stands for the i-th live root in ascending order;
    integer weights are kept-parallel-edge counts. With p = 1, or whenever
    counting every pair is no more expensive than drawing the lot, pair
    multiplicities are learned and thinned without replacement-by-rejection.
    `cap` clips the kept-edge total on out-of-regime levels so one bad level
    cannot blow the query budget.
    """
    roots = list(state.roots)
    masks = [state.group_mask(r) for r in roots]
    index = {r: i for i, r in enumerate(roots)}
    k = len(roots)
    e_total = state.interface_edge_count()

    def to_graph(by_key: dict[tuple[int, int], int], rooted: bool) -> WeightedGraph:
        out: dict[tuple[int, int], int] = {}
        for (a, b), w in by_key.items():
            if w:
                key = (index[a], index[b]) if rooted else (a, b)
                out[key] = w
        return WeightedGraph(k, out)

    if e_total == 0 or p <= 0:
        return WeightedGraph(k, {})
    if p >= 1:
        counts = learn_pair_counts(oracle, masks, edge_hint=e_total)
        assert counts is not None
        return to_graph(counts, rooted=False)

    kept = binomial_exact(rng, e_total, p)
    if cap is not None:
        kept = min(kept, cap)
    if kept == 0:
        return WeightedGraph(k, {})
    log_n = max(1, (max(2, oracle.n) - 1).bit_length())
    learn_cost = min(k + k * (k - 1) // 2, 3 * k + e_total * (2 * log_n + 2))
    draw_cost = kept * (2 * max(1, (max(2, k) - 1).bit_length()) + 2)
    if 2 * kept >= e_total or learn_cost <= draw_cost:
        counts = learn_pair_counts(oracle, masks, edge_hint=e_total)
        assert counts is not None
        by_roots = {(roots[a], roots[b]): w for (a, b), w in counts.items()}
        return to_graph(_hypergeometric_split(by_roots, kept, rng), rooted=True)
    return to_graph(_draw_interface_slots(oracle, state, kept, rng), rooted=True)


__all__ = [
    "EXACT_BINOMIAL_LIMIT",
    "binomial_exact",
    "descend_to_group",
    "sample_interface_pair",
    "singleton_state",
    "karger_until",
    "learn_pair_counts",
    "thin_pairs",
    "uniform_subsample",
]
