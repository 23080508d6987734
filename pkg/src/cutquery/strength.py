"""Edge-strength estimation and cut sparsification through the oracle.

The estimator walks a geometric ladder of connectivity levels from n down
to 1. At each level it subsamples the surviving contracted multigraph,
splits off the pieces that are well-connected at that level, certifies
every edge inside such a piece at half the level, tosses a sampled subset
of those edges into the sparsifier with the matching inverse probability
weight, and contracts the piece. Groups certified once never pay again.
"""

from __future__ import annotations

import math
import random
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

from .contraction import binomial_exact, singleton_state, uniform_subsample
from .discovery import sample_intergroup_edges
from .graph import Weight, WeightedGraph, bits_of
from .oracle import OracleBase
from .params import DEFAULT_TUNING, Tuning, ceil_log2
from .reference import deterministic_min_cut


@dataclass
class StrengthMap:
    """Strength certificates as (vertex mask, value) records in issue order.

    An edge's certificate is the first record whose mask contains both
    endpoints; the estimation loop only ever certifies a pair once, so the
    first match is the only one that was ever issued for that edge.
    """

    records: list[tuple[int, Fraction]] = field(default_factory=list)

    def assign(self, mask: int, value: Fraction) -> None:
        if mask.bit_count() < 2:
            raise ValueError("a certificate needs at least two vertices")
        self.records.append((mask, value))

    def resolve(self, u: int, v: int) -> Fraction | None:
        pair = (1 << u) | (1 << v)
        for mask, value in self.records:
            if pair & ~mask == 0:
                return value
        return None


def _induced_compact(g: WeightedGraph, mask: int) -> tuple[WeightedGraph, list[int]]:
    """Induced subgraph on `mask`, relabeled to 0..k-1; returns the labels."""
    verts = list(bits_of(mask))
    pos = {v: i for i, v in enumerate(verts)}
    kept = {
        (pos[u], pos[v]): w
        for (u, v), w in g.weights.items()
        if (mask >> u) & 1 and (mask >> v) & 1
    }
    return WeightedGraph(len(verts), kept), verts


# below this order a direct min cut is cheaper than structural shortcuts
_SW_PIECE_LIMIT = 48


def _bridge_edges(k: int, edges: list[tuple[int, int]]) -> list[tuple[int, int]]:
    """Bridges of a connected skeleton via iterative lowpoint search."""
    adj: list[list[tuple[int, int]]] = [[] for _ in range(k)]
    for ei, (u, v) in enumerate(edges):
        adj[u].append((v, ei))
        adj[v].append((u, ei))
    disc = [-1] * k
    low = [0] * k
    bridges: list[tuple[int, int]] = []
    timer = 0
    for root in range(k):
        if disc[root] != -1:
            continue
        stack = [(root, -1, iter(adj[root]))]
        disc[root] = low[root] = timer
        timer += 1
        while stack:
            v, in_edge, it = stack[-1]
            advanced = False
            for w, ei in it:
                if ei == in_edge:
                    continue
                if disc[w] == -1:
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append((w, ei, iter(adj[w])))
                    advanced = True
                    break
                low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if stack:
                parent = stack[-1][0]
                low[parent] = min(low[parent], low[v])
                if low[v] > disc[parent]:
                    bridges.append(edges[in_edge])
    return bridges


def strength_decompose_known(
    g: WeightedGraph,
    threshold: Weight,
    strict: bool = False,
    removed: list[tuple[int, Weight]] | None = None,
) -> list[int]:
    """Split a known graph along cheap cuts until none remain.

    Recursively removes any cut of value <= threshold (< threshold when
    strict) and returns the final piece masks; every surviving multi-vertex
    piece has min cut above the threshold. Pieces are reported as masks over
    g's vertex ids, sorted by smallest member. `removed`, when given,
    collects the (side mask, value) of every cut that was split along.

    Any cut under the threshold is a legal split, so cheap structure goes
    first: vertices whose boundary already qualifies peel off in a cascade,
    and when the threshold rules out every multi-edge cut (weights >= 1),
    qualifying bridges finish the job. A full min cut runs only on small
    pieces or on cores those shortcuts cannot crack.
    """

    def below(value: Weight) -> bool:
        return value < threshold if strict else value <= threshold

    final: list[int] = []
    stack = g.component_masks()
    while stack:
        mask = stack.pop()
        if mask.bit_count() == 1:
            final.append(mask)
            continue
        sub, verts = _induced_compact(g, mask)
        k = len(verts)
        pieces = sub.component_masks()
        if len(pieces) > 1:
            for p in pieces:
                expanded = 0
                for i in bits_of(p):
                    expanded |= 1 << verts[i]
                stack.append(expanded)
            continue
        neigh: list[list[tuple[int, Weight]]] = [[] for _ in range(k)]
        deg: list[Weight] = [0] * k
        for (u, v), w in sub.weights.items():
            neigh[u].append((v, w))
            neigh[v].append((u, w))
            deg[u] += w
            deg[v] += w
        alive = [True] * k
        pending = deque(i for i in range(k) if below(deg[i]))
        peeled = 0
        while pending:
            i = pending.popleft()
            if not alive[i] or not below(deg[i]):
                continue
            alive[i] = False
            peeled += 1
            if removed is not None:
                removed.append((1 << verts[i], deg[i]))
            final.append(1 << verts[i])
            for j, w in neigh[i]:
                if alive[j]:
                    was_ok = not below(deg[j])
                    deg[j] -= w
                    if was_ok and below(deg[j]):
                        pending.append(j)
        if peeled:
            remain = 0
            for i in range(k):
                if alive[i]:
                    remain |= 1 << verts[i]
            if remain:
                stack.append(remain)  # may have disconnected; re-split above
            continue
        if k > _SW_PIECE_LIMIT and not below(2) and min(sub.weights.values()) >= 1:
            # every multi-edge cut weighs at least 2, so only bridges qualify
            edges = sorted(sub.weights)
            cheap = [e for e in _bridge_edges(k, edges) if below(sub.weights[e])]
            if not cheap:
                final.append(mask)
                continue
            bu, bv = cheap[0]
            # one side of the bridge: everything u reaches without crossing it
            seen = {bu}
            frontier = [bu]
            while frontier:
                x = frontier.pop()
                for y, _ in neigh[x]:
                    if y not in seen and not (x == bu and y == bv):
                        seen.add(y)
                        frontier.append(y)
            side = 0
            for i in seen:
                side |= 1 << verts[i]
            if removed is not None:
                removed.append((side, sub.weights[(bu, bv)]))
            stack.append(side)
            stack.append(mask & ~side)
            continue
        cut = deterministic_min_cut(sub)
        if not below(cut.value):
            final.append(mask)
            continue
        side = 0
        for i in cut.side:
            side |= 1 << verts[i]
        if removed is not None:
            removed.append((side, cut.value))
        # recursing on the two sides drops the cut edges implicitly: an edge
        # across the split never lands inside a descendant's induced subgraph
        stack.append(side)
        stack.append(mask & ~side)
    final.sort(key=lambda m: m & -m)
    return final


def approximate_strengths(
    oracle: OracleBase,
    epsilon: Fraction | float,
    rng: random.Random,
    tuning: Tuning = DEFAULT_TUNING,
    diag: dict | None = None,
) -> tuple[StrengthMap, WeightedGraph]:
    """Certify every edge's strength within a sandwich factor and build the
    matching importance-sampled sparsifier.

    Walks connectivity levels kappa = n, n/2, n/4, ... 1. Per level: sample
    the surviving contracted multigraph, peel off the pieces whose sampled
    min cut clears the level's bar, certify all edges inside a peeled piece
    at kappa/2, sample Binomial(w_i, p') of them into H at weight 1/p', and
    contract the piece behind one boundary query. Returns the certificate
    map and H over the original vertex ids.
    """
    n = oracle.n
    eps = Fraction(epsilon)
    if not 0 < eps < 1:
        raise ValueError("epsilon must sit strictly between 0 and 1")
    state = singleton_state(oracle)
    smap = StrengthMap()
    h_acc: dict[tuple[int, int], Weight] = {}
    levels: list[dict] = []
    for j in range(ceil_log2(max(2, n)) + 1):
        if state.group_count() <= 1:
            break
        kappa = Fraction(n, 1 << j)
        q = tuning.strength_prob(n, kappa)
        p_h = tuning.h_prob(q, eps)
        e_now = state.interface_edge_count()
        rec = {
            "kappa": kappa,
            "q": q,
            "groups": state.group_count(),
            "edges_before": e_now,
            "pieces_contracted": 0,
            "certified_edges": 0,
            "h_edges": 0,
        }
        levels.append(rec)
        if e_now == 0:
            continue
        cap = max(64, math.ceil(tuning.edge_regime_factor * float(q * kappa) * n))
        sampled = uniform_subsample(oracle, state, q, rng, cap=cap)
        roots = list(state.roots)
        masks = [state.group_mask(r) for r in roots]
        bar = q * tuning.decompose_frac * kappa
        for cmask in strength_decompose_known(sampled, bar):
            if cmask.bit_count() < 2:
                continue
            family = [masks[i] for i in bits_of(cmask)]
            expansion = 0
            for fm in family:
                expansion |= fm
            boundary = oracle.query_mask(expansion)
            inside2 = sum(state.degree(roots[i]) for i in bits_of(cmask)) - boundary
            assert inside2 > 0 and inside2 % 2 == 0, "piece lost its inner edges"
            w_i = inside2 // 2
            smap.assign(expansion, kappa / 2)
            rec["pieces_contracted"] += 1
            rec["certified_edges"] += w_i
            take = binomial_exact(rng, w_i, p_h)
            if take:
                weight: Weight = 1 if p_h >= 1 else Fraction(1) / p_h
                for u, v in sample_intergroup_edges(oracle, family, take, rng):
                    key = (u, v) if u < v else (v, u)
                    assert key not in h_acc, "edge certified twice"
                    h_acc[key] = weight
                rec["h_edges"] += take
            root = state.merge_group_set(bits_of(expansion))
            state.set_degree(root, boundary)
    h = WeightedGraph(n, h_acc)
    if diag is not None:
        diag["levels"] = levels
        diag["best_seen"] = state.best_seen
        diag["h_edge_count"] = h.m
        diag["groups_left"] = state.group_count()
    return smap, h


def build_sparsifier(
    oracle: OracleBase,
    epsilon: Fraction | float,
    rng: random.Random,
    tuning: Tuning = DEFAULT_TUNING,
    diag: dict | None = None,
) -> WeightedGraph:
    """Weighted graph approximating every cut of the hidden graph within
    a (1 +- epsilon) band, built from strength certificates."""
    _, h = approximate_strengths(oracle, epsilon, rng, tuning, diag=diag)
    return h


__all__ = [
    "StrengthMap",
    "strength_decompose_known",
    "approximate_strengths",
    "build_sparsifier",
]
