"""Exact cut computations on fully known graphs.

These are the ground-truth solvers: brute force over bipartitions for small
graphs, Stoer-Wagner for anything connected, max-flow for s-t cuts, and two
independent ways to compute edge strengths. The randomized pipelines call
the Stoer-Wagner and flow entry points on the small graphs they materialize;
the brute force versions exist so tests can cross-check everything against
code that shares no logic with the fast paths.
"""

from __future__ import annotations

from fractions import Fraction

import math

import numpy as np

from .flow import max_flow
from .graph import (
    Cut,
    SimpleGraph,
    Weight,
    WeightedGraph,
    better_cut,
    bits_of,
    canonical_side_mask,
)

BRUTE_FORCE_LIMIT = 24

# float64 holds every integer strictly below 2^53; staying a factor of two
# under keeps additions exact as well
FLOAT_EXACT_BOUND = 1 << 52


def _as_weighted(g: SimpleGraph | WeightedGraph) -> WeightedGraph:
    return g.to_weighted() if isinstance(g, SimpleGraph) else g


def _int_weights(g: WeightedGraph) -> tuple[dict[tuple[int, int], int], int]:
    """Weights rescaled to integers by the common denominator."""
    denom = 1
    for w in g.weights.values():
        if isinstance(w, Fraction):
            denom = denom * w.denominator // math.gcd(denom, w.denominator)
    scaled = {e: int(w * denom) for e, w in g.weights.items()}
    return scaled, denom


def _mask_cut_values(
    scaled: dict[tuple[int, int], int], n: int, masks: np.ndarray
) -> np.ndarray:
    """Exact integer cut values for an array of side masks."""
    x = ((masks[:, None] >> np.arange(n, dtype=np.uint64)) & 1).astype(np.int64)
    w = np.zeros((n, n), dtype=np.int64)
    for (u, v), c in scaled.items():
        w[u, v] = c
        w[v, u] = c
    deg = w.sum(axis=1)
    # cut(x) = x.deg - x W x^T, both exact in int64 for desk-size weights
    quad = np.einsum("ij,ij->i", x @ w, x)
    return x @ deg - quad


def brute_force_min_cut(
    g: SimpleGraph | WeightedGraph, st: tuple[int, int] | None = None
) -> Cut:
    """Global min cut by sweeping every bipartition; the reported side holds
    vertex 0 and ties resolve to the numerically smallest side mask. With
    `st` given, the sweep is restricted to sides separating the two."""
    if st is not None:
        return brute_force_st_min_cut(g, st[0], st[1])
    wg = _as_weighted(g)
    n = wg.n
    if n < 2:
        raise ValueError("cuts need at least two vertices")
    if n > BRUTE_FORCE_LIMIT:
        raise ValueError(f"brute force capped at {BRUTE_FORCE_LIMIT} vertices")
    scaled, denom = _int_weights(wg)
    total = sum(scaled.values())
    if total * 4 >= FLOAT_EXACT_BOUND:
        raise ValueError("weights too large for the integer sweep")
    best_val: int | None = None
    best_mask = 0
    chunk = 1 << 18
    top = 1 << (n - 1)
    for start in range(0, top, chunk):
        stop = min(start + chunk, top)
        halves = np.arange(start, stop, dtype=np.uint64)
        masks = (halves << np.uint64(1)) | np.uint64(1)
        if stop == top:
            masks = masks[:-1]  # the last half maps to the full vertex set
            if masks.size == 0:
                continue
        vals = _mask_cut_values(scaled, n, masks)
        i = int(np.argmin(vals))
        if best_val is None or vals[i] < best_val:
            best_val = int(vals[i])
            best_mask = int(masks[i])
    assert best_val is not None
    value: Weight = best_val if denom == 1 else Fraction(best_val, denom)
    if isinstance(value, Fraction) and value.denominator == 1:
        value = int(value)
    return Cut(frozenset(bits_of(best_mask)), value)


def brute_force_st_min_cut(
    g: SimpleGraph | WeightedGraph, s: int, t: int
) -> Cut:
    """Min s-t cut by sweeping every side containing s but not t."""
    wg = _as_weighted(g)
    n = wg.n
    if s == t or not (0 <= s < n and 0 <= t < n):
        raise ValueError("bad terminals")
    if n > BRUTE_FORCE_LIMIT:
        raise ValueError(f"brute force capped at {BRUTE_FORCE_LIMIT} vertices")
    scaled, denom = _int_weights(wg)
    if sum(scaled.values()) * 4 >= FLOAT_EXACT_BOUND:
        raise ValueError("weights too large for the integer sweep")
    free = [v for v in range(n) if v != s and v != t]
    k = len(free)
    best_val: int | None = None
    best_mask = 0
    chunk = 1 << 18
    for start in range(0, 1 << k, chunk):
        stop = min(start + chunk, 1 << k)
        combos = np.arange(start, stop, dtype=np.uint64)
        masks = np.full(combos.shape, 1 << s, dtype=np.uint64)
        for i, v in enumerate(free):
            masks |= (((combos >> np.uint64(i)) & np.uint64(1)) << np.uint64(v))
        vals = _mask_cut_values(scaled, n, masks)
        i = int(np.argmin(vals))
        if best_val is None or vals[i] < best_val:
            best_val = int(vals[i])
            best_mask = int(masks[i])
    assert best_val is not None
    value: Weight = best_val if denom == 1 else Fraction(best_val, denom)
    if isinstance(value, Fraction) and value.denominator == 1:
        value = int(value)
    return Cut(frozenset(bits_of(best_mask)), value)


def _stoer_wagner_exact(wg: WeightedGraph, verts: list[int]) -> Cut:
    """Plain python Stoer-Wagner over the given connected vertex set."""
    idx = {v: i for i, v in enumerate(verts)}
    k = len(verts)
    adj: list[list[Weight]] = [[0] * k for _ in range(k)]
    for (u, v), c in wg.weights.items():
        if u in idx and v in idx:
            adj[idx[u]][idx[v]] += c
            adj[idx[v]][idx[u]] += c
    merged_mask = [1 << v for v in verts]
    active = list(range(k))
    best: Cut | None = None
    while len(active) > 1:
        # maximum adjacency order from the lowest surviving index
        inside = [active[0]]
        weight_to = {a: adj[active[0]][a] for a in active[1:]}
        while weight_to:
            nxt = max(weight_to, key=lambda a: (weight_to[a], -a))
            inside.append(nxt)
            del weight_to[nxt]
            for a in weight_to:
                weight_to[a] += adj[nxt][a]
        s, t = inside[-2], inside[-1]
        phase_cut: Weight = sum(adj[t][a] for a in active if a != t)
        candidate = Cut(frozenset(bits_of(merged_mask[t])), phase_cut)
        best = better_cut(best, candidate)
        # merge t into s
        merged_mask[s] |= merged_mask[t]
        for a in active:
            if a != s and a != t:
                adj[s][a] += adj[t][a]
                adj[a][s] = adj[s][a]
        active.remove(t)
    assert best is not None
    return best


def _stoer_wagner_float(wg: WeightedGraph, verts: list[int]) -> Cut:
    """Vectorized Stoer-Wagner; exact while integer totals fit in float64."""
    idx = {v: i for i, v in enumerate(verts)}
    k = len(verts)
    adj = np.zeros((k, k), dtype=np.float64)
    for (u, v), c in wg.weights.items():
        if u in idx and v in idx:
            adj[idx[u], idx[v]] += c
            adj[idx[v], idx[u]] += c
    merged_mask = [1 << v for v in verts]
    alive = np.ones(k, dtype=bool)
    order = list(range(k))
    best: Cut | None = None
    for _ in range(k - 1):
        live = np.flatnonzero(alive)
        start = live[0]
        in_set = np.zeros(k, dtype=bool)
        in_set[start] = True
        weight_to = adj[start].copy()
        weight_to[~alive] = -1.0
        weight_to[start] = -1.0
        prev = start
        last = start
        for _step in range(live.size - 1):
            nxt = int(np.argmax(weight_to))
            prev, last = last, nxt
            in_set[nxt] = True
            weight_to += adj[nxt]
            weight_to[in_set] = -1.0
            weight_to[~alive] = -1.0
        phase_cut = float(adj[last, alive].sum())
        val = int(phase_cut) if phase_cut.is_integer() else phase_cut
        candidate = Cut(frozenset(bits_of(merged_mask[last])), val)
        best = better_cut(best, candidate)
        merged_mask[prev] |= merged_mask[last]
        adj[prev] += adj[last]
        adj[:, prev] = adj[prev]
        adj[prev, prev] = 0.0
        alive[last] = False
        adj[last] = 0.0
        adj[:, last] = 0.0
    assert best is not None
    return best


def deterministic_min_cut(g: SimpleGraph | WeightedGraph) -> Cut:
    """Exact global min cut. Disconnected graphs report a zero cut whose
    side is the component holding the smallest vertex id."""
    wg = _as_weighted(g)
    if wg.n < 2:
        raise ValueError("cuts need at least two vertices")
    comps = wg.component_masks()
    if len(comps) > 1:
        side = min(comps, key=lambda m: m & -m)
        return Cut(frozenset(bits_of(side)), 0)
    verts = list(range(wg.n))
    total = wg.total_weight()
    if wg.is_integral() and total < FLOAT_EXACT_BOUND // 4 and wg.n > 6:
        intw = WeightedGraph(wg.n, {e: int(w) for e, w in wg.weights.items()})
        return _stoer_wagner_float(intw, verts)
    return _stoer_wagner_exact(wg, verts)


def st_min_cut_known(g: WeightedGraph, s: int, t: int) -> Cut:
    """Exact min s-t cut of a known graph via max flow; side holds s."""
    comps = g.component_masks()
    side = next(c for c in comps if (c >> s) & 1)
    if not (side >> t) & 1:
        return Cut(frozenset(bits_of(side)), 0)
    result = max_flow(g, s, t)
    return Cut(frozenset(bits_of(result.source_side_mask)), result.value)


# ---------------------------------------------------------------------------
# strengths
#
# The strength of an edge is the largest edge connectivity among vertex
# induced subgraphs containing it. Two computations are kept: a recursion
# on minimum cuts, and a definitional sweep over all subsets for tiny n.


def exact_strengths(g: SimpleGraph | WeightedGraph) -> dict[tuple[int, int], Weight]:
    """Strength of every edge via the min cut recursion.

    An edge's strength is the largest min cut among the nested pieces that
    contain it: any subgraph holding the edge either straddles some piece's
    minimum cut (and then its connectivity is at most that cut's value) or
    descends intact into the next piece. So the recursion carries the best
    ancestor cut value as a floor and assigns crossing edges
    max(floor, piece min cut).
    """
    wg = _as_weighted(g)
    out: dict[tuple[int, int], Weight] = {}

    def solve(vmask: int, floor: Weight) -> None:
        if vmask.bit_count() < 2:
            return
        sub = wg.subgraph(vmask)
        if not sub.weights:
            return
        comps = sub.component_masks(vmask)
        if len(comps) > 1:
            for comp in comps:
                solve(comp, floor)
            return
        relabel = {v: i for i, v in enumerate(bits_of(vmask))}
        small = WeightedGraph(
            len(relabel),
            {(relabel[u], relabel[v]): w for (u, v), w in sub.weights.items()},
        )
        cut = deterministic_min_cut(small)
        level = max(floor, cut.value)
        back = {i: v for v, i in relabel.items()}
        side = 0
        for i in cut.side:
            side |= 1 << back[i]
        for (u, v), _w in sub.weights.items():
            if ((side >> u) ^ (side >> v)) & 1:
                out[(u, v)] = level
        solve(side, level)
        solve(vmask & ~side, level)

    solve((1 << wg.n) - 1, 0)
    return out


def definitional_strengths(
    g: SimpleGraph | WeightedGraph,
) -> dict[tuple[int, int], Weight]:
    """Strengths straight from the definition; exponential, for tiny n."""
    wg = _as_weighted(g)
    n = wg.n
    if n > 12:
        raise ValueError("definitional sweep capped at 12 vertices")
    connectivity: dict[int, Weight] = {}
    for mask in range(1, 1 << n):
        if mask.bit_count() < 2:
            continue
        sub = wg.subgraph(mask)
        comps = sub.component_masks(mask)
        if len(comps) > 1:
            connectivity[mask] = 0
            continue
        relabel = {v: i for i, v in enumerate(bits_of(mask))}
        small = WeightedGraph(
            len(relabel),
            {(relabel[u], relabel[v]): w for (u, v), w in sub.weights.items()},
        )
        connectivity[mask] = deterministic_min_cut(small).value
    out: dict[tuple[int, int], Weight] = {}
    for (u, v) in wg.weights:
        pair = (1 << u) | (1 << v)
        best: Weight = 0
        for mask, kappa in connectivity.items():
            if mask & pair == pair and kappa > best:
                best = kappa
        out[(u, v)] = best
    return out
