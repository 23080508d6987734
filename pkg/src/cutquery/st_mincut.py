"""Exact minimum s-t cut with a sublinear number of cut queries.

The route: build a strength sparsifier H, push a max flow between the
terminals in H, delete the flow, and decompose what survives at a small
strength threshold. Any edge of an exact min s-t cut has low strength in
the flow-stripped graph, so the decomposition's pieces never straddle the
cut; contracting each piece leaves a multigraph small enough to learn edge
by edge, and the exact answer comes from max flow on that multigraph.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction

from .contraction import learn_pair_counts, singleton_state
from .flow import max_flow, strip_flow
from .graph import Cut, WeightedGraph, better_cut, bits_of
from .oracle import OracleBase
from .params import DEFAULT_TUNING, Tuning, st_epsilon
from .reference import st_min_cut_known
from .strength import approximate_strengths, strength_decompose_known


def st_min_cut(
    oracle: OracleBase,
    s: int,
    t: int,
    rng: random.Random | None = None,
    epsilon: Fraction | float | None = None,
    tuning: Tuning = DEFAULT_TUNING,
    info: dict | None = None,
) -> Cut:
    """Exact min s-t cut; the returned side contains s.

    epsilon defaults to min(n^{-1/3}, 3/10); anything at or past 1/3 breaks
    the argument that decomposition pieces avoid straddling the cut, so that
    range is rejected. When the contracted interface is unexpectedly large
    (or learning it would blow the budget) the result degrades to the better
    of the two terminal boundaries rather than overspending; info["degraded"]
    reports it.
    """
    if rng is None:
        raise ValueError("an rng is required")
    n = oracle.n
    if not (0 <= s < n and 0 <= t < n) or s == t:
        raise ValueError("need two distinct terminals in range")
    eps = st_epsilon(n) if epsilon is None else Fraction(epsilon)
    if not 0 < eps < Fraction(1, 3):
        raise ValueError("epsilon must sit strictly between 0 and 1/3")

    _, h = approximate_strengths(oracle, eps, rng, tuning)
    flow = max_flow(h, s, t)
    assert h.cut_value_mask(flow.source_side_mask) == flow.value
    residue = strip_flow(h, flow)
    f_up = min(n - 1, math.ceil((1 + eps) * Fraction(flow.value)))
    tau = 3 * eps * f_up
    pieces = strength_decompose_known(residue, tau, strict=True)

    # a piece holding both terminals would hide the cut inside one group;
    # dissolve it instead of trusting it
    groups: list[int] = []
    for mask in pieces:
        if (mask >> s) & 1 and (mask >> t) & 1:
            groups.extend(1 << v for v in bits_of(mask))
        else:
            groups.append(mask)

    state = singleton_state(oracle)  # degrees memoized by the sparsifier pass
    for mask in groups:
        members = list(bits_of(mask))
        if len(members) > 1:
            root = state.merge_group_set(members)
            state.set_degree(root, oracle.query_mask(state.group_mask(root)))

    stats = {
        "flow_value": flow.value,
        "threshold": tau,
        "groups": state.group_count(),
        "group_masks": [state.group_mask(r) for r in state.roots],
        "reference_side_mask": flow.source_side_mask,
        "degraded": False,
        "learned_edges": 0,
    }
    fallback = better_cut(
        Cut(frozenset([s]), oracle.query_mask(1 << s)),
        Cut(frozenset(range(n)) - {t}, oracle.query_mask(oracle.full_mask() ^ (1 << t))),
    )
    cap = tuning.st_learn_cap(n)
    e_rem = state.interface_edge_count()
    roots = list(state.roots)
    masks = [state.group_mask(r) for r in roots]
    counts = None
    if e_rem <= cap:
        counts = learn_pair_counts(oracle, masks, abort_above=cap, edge_hint=e_rem)
    if counts is None:
        stats["degraded"] = True
        if info is not None:
            info.update(stats)
        return fallback
    stats["learned_edges"] = sum(counts.values())
    mg = WeightedGraph(len(roots), counts)
    s_idx = next(i for i, m in enumerate(masks) if (m >> s) & 1)
    t_idx = next(i for i, m in enumerate(masks) if (m >> t) & 1)
    inner = st_min_cut_known(mg, s_idx, t_idx)
    side = 0
    for i in inner.side:
        side |= masks[i]
    if info is not None:
        info.update(stats)
    return Cut(frozenset(bits_of(side)), inner.value)


__all__ = ["st_min_cut"]
