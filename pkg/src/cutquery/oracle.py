"""Cut-value oracle with query accounting.

The oracle answers "how many hidden edges leave this vertex set" and keeps
two counters: `total_calls` counts every answered call, `distinct_queries`
counts memo misses only. Distinct queries are the cost that matters; repeats
hit the memo. The memo key is the canonical side bitmask (the side holding
vertex 0), so a set and its complement share one entry. The empty and full
sets answer 0 without touching either counter.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .graph import ContractionState, SimpleGraph, mask_of


@dataclass
class QueryLedger:
    """Running account of oracle usage.

    When `log` is a list, every fresh query appends its canonical mask and
    answer in arrival order; memo hits are never logged.
    """

    distinct_queries: int = 0
    total_calls: int = 0
    log: list[tuple[int, int]] | None = None

    def record(self, mask: int, value: int, fresh: bool) -> None:
        self.total_calls += 1
        if fresh:
            self.distinct_queries += 1
            if self.log is not None:
                self.log.append((mask, value))

    def snapshot(self) -> tuple[int, int]:
        return (self.distinct_queries, self.total_calls)


class OracleBase:
    """Query plumbing shared by the full oracle and contracted views."""

    n: int
    ledger: QueryLedger

    def query_mask(self, mask: int) -> int:
        raise NotImplementedError

    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def query(self, vertices: Iterable[int]) -> int:
        return self.query_mask(mask_of(vertices))

    def count_between_masks(self, a: int, b: int) -> int:
        """Edges with one endpoint in a and the other in b (disjoint sets)."""
        if a & b:
            raise ValueError("sets overlap")
        if a == 0 or b == 0:
            return 0
        both = self.query_mask(a) + self.query_mask(b) - self.query_mask(a | b)
        if both % 2:
            raise AssertionError("cut arithmetic produced an odd edge total")
        return both // 2

    def has_edge(self, u: int, v: int) -> bool:
        if u == v:
            raise ValueError("self-loops are undefined")
        return self.count_between_masks(1 << u, 1 << v) > 0

    def vertex_degree(self, v: int) -> int:
        return self.query_mask(1 << v)


class CutOracle(OracleBase):
    """Oracle over a hidden `SimpleGraph`."""

    def __init__(self, graph: SimpleGraph, log_queries: bool = False):
        self._graph = graph
        self.n = graph.n
        self.ledger = QueryLedger(log=[] if log_queries else None)
        self._memo: dict[int, int] = {}

    def query_mask(self, mask: int) -> int:
        full = (1 << self.n) - 1
        if mask & ~full:
            raise ValueError("query outside the oracle's vertex set")
        if mask == 0 or mask == full:
            return 0
        key = mask if mask & 1 else full & ~mask
        hit = key in self._memo
        if hit:
            value = self._memo[key]
        else:
            value = self._graph.cut_value_mask(key)
            self._memo[key] = value
        self.ledger.record(key, value, fresh=not hit)
        return value

    def restricted_view(self, state: ContractionState) -> "ContractedOracle":
        return ContractedOracle(self, state)


class ContractedOracle(OracleBase):
    """View of a parent oracle where super-vertices stand in for their groups.

    Queries are phrased as masks over group roots (the smallest original id
    in each group), expanded to the underlying original-vertex sets, and
    answered by the parent. Memoization and the ledger live with the parent,
    so the view never pays twice for a set the parent has already resolved,
    and under the identity partition it is indistinguishable from the parent.
    The partition is read live: contracting the state changes later answers.
    """

    def __init__(self, parent: OracleBase, state: ContractionState):
        if state.n != parent.n:
            raise ValueError("partition and oracle disagree on vertex count")
        self.parent = parent
        self.state = state
        self.n = parent.n

    @property
    def ledger(self) -> QueryLedger:  # type: ignore[override]
        return self.parent.ledger

    def full_mask(self) -> int:
        return mask_of(self.state.roots)

    def expand_mask(self, mask: int) -> int:
        """Original-vertex mask covered by a mask of group roots."""
        if mask & ~self.full_mask():
            raise ValueError("query names non-root vertices")
        expanded = 0
        while mask:
            low = mask & -mask
            expanded |= self.state.group_mask(low.bit_length() - 1)
            mask ^= low
        return expanded

    def query_mask(self, mask: int) -> int:
        return self.parent.query_mask(self.expand_mask(mask))


def restricted_view(oracle: OracleBase, state: ContractionState) -> ContractedOracle:
    """Super-vertex view of `oracle` under the given partition."""
    return ContractedOracle(oracle, state)


def edges_between(oracle: OracleBase, v: int, targets: Iterable[int] | int) -> int:
    """Edges joining vertex v to the target set: (c({v})+c(T)-c(T+v))/2."""
    t_mask = targets if isinstance(targets, int) else mask_of(targets)
    if (t_mask >> v) & 1:
        raise ValueError("v lies inside the target set")
    return oracle.count_between_masks(1 << v, t_mask)


def group_degree(oracle: OracleBase, members: Iterable[int] | int) -> int:
    mask = members if isinstance(members, int) else mask_of(members)
    return oracle.query_mask(mask)


__all__ = [
    "QueryLedger",
    "OracleBase",
    "CutOracle",
    "ContractedOracle",
    "restricted_view",
    "edges_between",
    "group_degree",
]
