import math
import random
from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cutquery import (
    CutOracle,
    SimpleGraph,
    find_neighbor,
    learn_graph,
    make_rng,
    sample_k_distinct_edges,
    sample_uniform_edge,
)
from cutquery.discovery import scope_degrees
from cutquery.graph import gnp, mask_of
from cutquery.params import ceil_log2

from conftest import all_simple_graphs, random_simple_graph


def path(n: int) -> SimpleGraph:
    return SimpleGraph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def star(leaves: int) -> SimpleGraph:
    return SimpleGraph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def neighbor_checked(oracle, v, candidates, exclude=0):
    """find_neighbor plus the per-invocation distinct-query bound."""
    cand_mask = candidates if isinstance(candidates, int) else mask_of(candidates)
    excl_mask = exclude if isinstance(exclude, int) else mask_of(exclude)
    live = bin(cand_mask & ~excl_mask & ~(1 << v)).count("1")
    before = oracle.ledger.distinct_queries
    got = find_neighbor(oracle, v, candidates, exclude)
    spent = oracle.ledger.distinct_queries - before
    budget = 3 * ceil_log2(max(2, live)) + 3 if live else 3
    assert spent <= budget, f"{spent} distinct queries, budget {budget}"
    return got


def test_path_neighbor_excluding_one_side():
    oracle = CutOracle(path(5))
    got = neighbor_checked(oracle, 2, [0, 1, 3, 4], exclude=[1])
    assert got == 3


def test_path_neighbor_is_deterministic():
    runs = {
        neighbor_checked(CutOracle(path(5)), 2, [0, 1, 3, 4]) for _ in range(5)
    }
    assert len(runs) == 1  # halving probes the lower half first, every time


def test_star_center_and_leaf():
    oracle = CutOracle(star(4))
    got = neighbor_checked(oracle, 0, [1, 2, 3, 4])
    assert got in {1, 2, 3, 4}
    assert neighbor_checked(oracle, 1, [0, 2, 3, 4]) == 0
    assert neighbor_checked(oracle, 1, [2, 3, 4]) is None


def test_isolated_vertex_has_no_neighbor():
    g = SimpleGraph.from_edges(3, [(0, 1)])
    oracle = CutOracle(g)
    assert neighbor_checked(oracle, 2, [0, 1]) is None


def test_exclude_must_be_subset_of_candidates():
    oracle = CutOracle(path(3))
    with pytest.raises(ValueError):
        find_neighbor(oracle, 0, [1], exclude=[2])


def test_neighbor_found_whenever_one_exists_small_exhaustive():
    # every graph on up to 5 vertices, every start, full candidate set
    for n in (2, 3, 4, 5):
        for g in all_simple_graphs(n):
            oracle = CutOracle(g)
            adj = g.adjacency_masks()
            for v in range(n):
                others = [u for u in range(n) if u != v]
                got = neighbor_checked(oracle, v, others)
                if adj[v]:
                    assert got is not None and (adj[v] >> got) & 1
                else:
                    assert got is None


@settings(max_examples=150, deadline=None)
@given(st.data())
def test_neighbor_found_whenever_one_exists_random(data):
    n = data.draw(st.integers(6, 7))
    g = random_simple_graph(n, random.Random(data.draw(st.integers(0, 10**6))))
    v = data.draw(st.integers(0, n - 1))
    exclude_pool = [u for u in range(n) if u != v]
    exclude = data.draw(st.sets(st.sampled_from(exclude_pool), max_size=n - 2))
    oracle = CutOracle(g)
    got = neighbor_checked(oracle, v, exclude_pool, exclude=sorted(exclude))
    adj = g.adjacency_masks()[v]
    live = adj & ~mask_of(exclude)
    if live:
        assert got is not None and (live >> got) & 1
    else:
        assert got is None


def learn_checked(g: SimpleGraph, abort_above=None):
    oracle = CutOracle(g)
    before = oracle.ledger.distinct_queries
    learned = learn_graph(oracle, abort_above=abort_above)
    spent = oracle.ledger.distinct_queries - before
    if learned is not None:
        budget = 4 * (g.n + g.m * ceil_log2(max(2, g.n)))
        assert spent <= budget, f"{spent} distinct queries, budget {budget}"
    return learned


def test_learn_cycle_exactly():
    g = SimpleGraph.from_edges(6, [(i, (i + 1) % 6) for i in range(6)])
    assert learn_checked(g) == g


def test_learn_aborts_on_dense_graph():
    k10 = SimpleGraph.from_edges(10, [(u, v) for u in range(10) for v in range(u + 1, 10)])
    assert learn_checked(k10, abort_above=5) is None


def test_learn_random_graph_within_budget():
    g = gnp(30, 0.2, random.Random(9))
    assert learn_checked(g) == g


def test_learn_many_random_graphs():
    rng = random.Random(77)
    for _ in range(15):
        g = random_simple_graph(rng.randint(2, 12), rng)
        assert learn_checked(g) == g


def test_uniform_edge_on_triangle():
    g = SimpleGraph.from_edges(3, [(0, 1), (0, 2), (1, 2)])
    oracle = CutOracle(g)
    degrees = scope_degrees(oracle, (1 << 3) - 1)
    rng = make_rng(123, "tri")
    counts = Counter(sample_uniform_edge(oracle, degrees, rng) for _ in range(3000))
    assert set(counts) == set(g.edges)
    for e in g.edges:
        assert abs(counts[e] / 3000 - 1 / 3) <= 0.05


def test_uniform_edge_on_barbell_bridge_rate():
    from cutquery import barbell

    g = barbell(4)  # 13 edges, one bridge
    oracle = CutOracle(g)
    degrees = scope_degrees(oracle, (1 << g.n) - 1)
    rng = make_rng(7, "barbell")
    bridge = (3, 4)
    hits = sum(
        sample_uniform_edge(oracle, degrees, rng) == bridge for _ in range(5000)
    )
    assert abs(hits / 5000 - 1 / 13) <= 0.02


def test_sample_k_complete_graph_all_edges():
    k4 = SimpleGraph.from_edges(4, [(u, v) for u in range(4) for v in range(u + 1, 4)])
    oracle = CutOracle(k4)
    got = sample_k_distinct_edges(oracle, (1 << 4) - 1, 6, make_rng(1))
    assert sorted(got) == sorted(k4.edges)


def test_sample_k_zero():
    oracle = CutOracle(path(4))
    assert sample_k_distinct_edges(oracle, (1 << 4) - 1, 0, make_rng(1)) == []


def test_sample_k_requires_enough_edges():
    oracle = CutOracle(path(3))
    with pytest.raises(ValueError):
        sample_k_distinct_edges(oracle, (1 << 3) - 1, 5, make_rng(1))


def test_sample_k_marginal_inclusion_rate():
    # drawing 3 of K5's 10 edges: each edge should appear with rate 3/10
    k5 = SimpleGraph.from_edges(5, [(u, v) for u in range(5) for v in range(u + 1, 5)])
    oracle = CutOracle(k5)
    rng = make_rng(42, "k5")
    counts = Counter()
    trials = 2000
    for _ in range(trials):
        for e in sample_k_distinct_edges(oracle, (1 << 5) - 1, 3, rng):
            counts[e] += 1
    for e in k5.edges:
        assert abs(counts[e] / trials - 0.3) <= 0.03


def test_sample_k_respects_scope():
    # scope covering only the first 3 vertices of a path: one eligible edge
    oracle = CutOracle(path(6))
    got = sample_k_distinct_edges(oracle, 0b000111, 2, make_rng(3))
    assert sorted(got) == [(0, 1), (1, 2)]
    for u, v in got:
        assert u < 3 and v < 3
