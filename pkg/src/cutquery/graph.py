"""Graph value types, generators, and edge-list serialization.

Vertices are dense integer ids 0..n-1. `SimpleGraph` is the hidden ground
truth an oracle answers for; `WeightedGraph` carries integer multiplicities
or exact `Fraction` weights for everything the algorithms materialize.
Vertex sets are passed around as python ints used as bitmasks, which keeps
set algebra and canonical hashing cheap.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator

Weight = int | Fraction


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def bits_of(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def normalize_edge(u: int, v: int) -> tuple[int, int]:
    if u == v:
        raise ValueError(f"self loop at vertex {u}")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class SimpleGraph:
    """Immutable undirected simple graph."""

    n: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        for u, v in self.edges:
            if not (0 <= u < v < self.n):
                raise ValueError(f"edge ({u}, {v}) outside vertex range 0..{self.n - 1}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "SimpleGraph":
        return cls(n, frozenset(normalize_edge(u, v) for u, v in edges))

    @property
    def m(self) -> int:
        return len(self.edges)

    def adjacency_masks(self) -> list[int]:
        cached = getattr(self, "_adj", None)
        if cached is None:
            adj = [0] * self.n
            for u, v in self.edges:
                adj[u] |= 1 << v
                adj[v] |= 1 << u
            object.__setattr__(self, "_adj", adj)
            cached = adj
        return cached

    def degrees(self) -> list[int]:
        return [a.bit_count() for a in self.adjacency_masks()]

    def has_edge(self, u: int, v: int) -> bool:
        return normalize_edge(u, v) in self.edges

    def cut_value_mask(self, mask: int) -> int:
        full = (1 << self.n) - 1
        if mask & ~full:
            raise ValueError("vertex set outside graph range")
        # evaluate from the smaller side; the cut is symmetric
        if mask.bit_count() > self.n // 2:
            mask = full & ~mask
        adj = self.adjacency_masks()
        outside = full & ~mask
        return sum((adj[v] & outside).bit_count() for v in bits_of(mask))

    def to_weighted(self) -> "WeightedGraph":
        return WeightedGraph(self.n, {e: 1 for e in self.edges})


@dataclass
class WeightedGraph:
    """Undirected graph with positive integer or Fraction edge weights.

    Parallel contributions are merged additively at construction time.
    Instances are treated as immutable once built.
    """

    n: int
    weights: dict[tuple[int, int], Weight] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for (u, v), w in self.weights.items():
            if not (0 <= u < v < self.n):
                raise ValueError(f"edge ({u}, {v}) outside vertex range 0..{self.n - 1}")
            if w <= 0:
                raise ValueError(f"nonpositive weight {w} on edge ({u}, {v})")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int, Weight]]) -> "WeightedGraph":
        acc: dict[tuple[int, int], Weight] = {}
        for u, v, w in edges:
            e = normalize_edge(u, v)
            acc[e] = acc.get(e, 0) + w
        return cls(n, acc)

    @property
    def m(self) -> int:
        return len(self.weights)

    def total_weight(self) -> Weight:
        return sum(self.weights.values())

    def is_integral(self) -> bool:
        return all(isinstance(w, int) or w.denominator == 1 for w in self.weights.values())

    def degree_weights(self) -> list[Weight]:
        deg: list[Weight] = [0] * self.n
        for (u, v), w in self.weights.items():
            deg[u] += w
            deg[v] += w
        return deg

    def cut_value_mask(self, mask: int) -> Weight:
        full = (1 << self.n) - 1
        if mask & ~full:
            raise ValueError("vertex set outside graph range")
        total: Weight = 0
        for (u, v), w in self.weights.items():
            if ((mask >> u) ^ (mask >> v)) & 1:
                total += w
        return total

    def neighbors(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {v: [] for v in range(self.n)}
        for u, v in self.weights:
            out[u].append(v)
            out[v].append(u)
        return out

    def component_masks(self, within: int | None = None) -> list[int]:
        """Connected components as masks, restricted to `within` if given."""
        scope = within if within is not None else (1 << self.n) - 1
        adj: dict[int, int] = {v: 0 for v in bits_of(scope)}
        for (u, v) in self.weights:
            if (scope >> u) & 1 and (scope >> v) & 1:
                adj[u] |= 1 << v
                adj[v] |= 1 << u
        seen = 0
        comps = []
        for v in bits_of(scope):
            if (seen >> v) & 1:
                continue
            frontier = 1 << v
            comp = 0
            while frontier:
                comp |= frontier
                nxt = 0
                for x in bits_of(frontier):
                    nxt |= adj[x]
                frontier = nxt & ~comp
            seen |= comp
            comps.append(comp)
        return comps

    def subgraph(self, mask: int) -> "WeightedGraph":
        """Edges with both endpoints inside `mask`; the id space is kept."""
        keep = {
            (u, v): w
            for (u, v), w in self.weights.items()
            if (mask >> u) & 1 and (mask >> v) & 1
        }
        return WeightedGraph(self.n, keep)


def exact_cut_value(g: SimpleGraph | WeightedGraph, side: Iterable[int] | int) -> Weight:
    """Total weight of edges with exactly one endpoint in `side`.

    `side` may be a vertex iterable or a bitmask. Works on the full set and
    the empty set (both cut nothing).
    """
    mask = side if isinstance(side, int) else mask_of(side)
    return g.cut_value_mask(mask)


@dataclass(frozen=True)
class Cut:
    """One side of a bipartition together with its cut value."""

    side: frozenset[int]
    value: Weight

    def side_mask(self) -> int:
        return mask_of(self.side)

    def sorted_side(self) -> tuple[int, ...]:
        return tuple(sorted(self.side))


def canonical_side_mask(mask: int, universe: int) -> int:
    """The of the two sides that contains the smallest vertex of `universe`."""
    low = universe & -universe
    return mask if mask & low else universe & ~mask


def better_cut(a: Cut | None, b: Cut) -> Cut:
    """Smaller value wins; ties go to the lexicographically smaller side."""
    if a is None or b.value < a.value:
        return b
    if b.value == a.value and b.sorted_side() < a.sorted_side():
        return b
    return a


class ContractionState:
    """Mutable partition of 0..n-1 into super-vertex groups.

    Tracks a member bitmask and a boundary degree per group. A group's degree
    is `None` while stale (just merged); refreshing it is the contraction
    module's job and costs exactly one oracle query. Single-owner: not
    thread-safe, copy before forking work.
    """

    def __init__(self, n: int, degrees: list[int] | None = None):
        self.n = n
        self._parent = list(range(n))
        self._mask: dict[int, int] = {v: 1 << v for v in range(n)}
        self._degree: dict[int, int | None] = {
            v: (degrees[v] if degrees is not None else None) for v in range(n)
        }
        self.roots: list[int] = list(range(n))
        # cheapest proper group boundary seen over the whole run: (value, mask)
        self.best_seen: tuple[int, int] | None = None
        if degrees is not None:
            for v in range(n):
                self._note(degrees[v], 1 << v)

    def copy(self) -> "ContractionState":
        dup = ContractionState.__new__(ContractionState)
        dup.n = self.n
        dup._parent = list(self._parent)
        dup._mask = dict(self._mask)
        dup._degree = dict(self._degree)
        dup.roots = list(self.roots)
        dup.best_seen = self.best_seen
        return dup

    def find(self, v: int) -> int:
        parent = self._parent
        root = v
        while parent[root] != root:
            root = parent[root]
        while parent[v] != root:
            parent[v], v = root, parent[v]
        return root

    def group_mask(self, root: int) -> int:
        return self._mask[root]

    def group_members(self, root: int) -> tuple[int, ...]:
        return tuple(bits_of(self._mask[root]))

    def groups(self) -> list[frozenset[int]]:
        return [frozenset(bits_of(self._mask[r])) for r in self.roots]

    def group_count(self) -> int:
        return len(self.roots)

    def degree(self, root: int) -> int:
        d = self._degree[root]
        if d is None:
            raise ValueError(f"group {root} has a stale degree; refresh it first")
        return d

    def _note(self, value: int, mask: int) -> None:
        full = (1 << self.n) - 1
        if mask != full and (self.best_seen is None or value < self.best_seen[0]):
            self.best_seen = (value, mask)

    def set_degree(self, root: int, value: int) -> None:
        if value < 0:
            raise ValueError("negative boundary degree")
        self._degree[root] = value
        self._note(value, self._mask[root])

    def contract(self, u: int, v: int) -> int:
        """Merge the groups of u and v; returns the surviving root.

        The merged group's degree is left stale and must be refreshed by
        exactly one oracle query before it is read again.
        """
        ru, rv = self.find(u), self.find(v)
        if ru == rv:
            raise ValueError(f"vertices {u} and {v} are already in one group")
        keep, drop = (ru, rv) if ru < rv else (rv, ru)
        self._parent[drop] = keep
        self._mask[keep] |= self._mask[drop]
        del self._mask[drop]
        del self._degree[drop]
        self._degree[keep] = None
        self.roots.remove(drop)
        return keep

    def merge_group_set(self, members: Iterable[int]) -> int:
        """Contract every listed vertex into one group; degree left stale."""
        roots = sorted({self.find(v) for v in members})
        keep = roots[0]
        for other in roots[1:]:
            keep = self.contract(keep, other)
        return keep

    def stale_roots(self) -> list[int]:
        return [r for r in self.roots if self._degree[r] is None]

    def interface_edge_count(self) -> int:
        """Number of edges running between distinct groups (each once)."""
        total = 0
        for r in self.roots:
            total += self.degree(r)
        if total % 2:
            raise AssertionError("odd boundary degree sum; some degree is wrong")
        return total // 2


# ---------------------------------------------------------------------------
# generators


def gnp(n: int, p: float, rng: random.Random) -> SimpleGraph:
    """Erdos-Renyi G(n, p)."""
    if n < 1:
        raise ValueError("need at least one vertex")
    if not 0.0 <= p <= 1.0:
        raise ValueError("edge probability must lie in [0, 1]")
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return SimpleGraph.from_edges(n, edges)


def barbell(clique: int) -> SimpleGraph:
    """Two cliques of size `clique` joined by a single bridge edge."""
    if clique < 2:
        raise ValueError("cliques need at least two vertices")
    k = clique
    edges = [(u, v) for u in range(k) for v in range(u + 1, k)]
    edges += [(k + u, k + v) for u in range(k) for v in range(u + 1, k)]
    edges.append((k - 1, k))
    return SimpleGraph.from_edges(2 * k, edges)


def cycle(n: int) -> SimpleGraph:
    if n < 3:
        raise ValueError("a cycle needs at least three vertices")
    return SimpleGraph.from_edges(n, [(v, (v + 1) % n) for v in range(n)])


def planted_cut_sides(
    n: int, k: int, inside_p: float, rng: random.Random
) -> tuple[SimpleGraph, frozenset[int]]:
    """Random bisection with exactly k crossing edges, plus the planted side.

    Each side is an Erdos-Renyi graph with density inside_p; the k crossing
    edges are a uniform sample of the possible bridges. Survival experiments
    need the side, so it is returned alongside the graph.
    """
    if n < 4:
        raise ValueError("planted instances need at least four vertices")
    h = n // 2
    if k < 0 or k > h * (n - h):
        raise ValueError(f"crossing count {k} impossible for bisection {h}/{n - h}")
    ids = list(range(n))
    rng.shuffle(ids)
    side, other = ids[:h], ids[h:]
    edges = [
        (u, v) for i, u in enumerate(side) for v in side[i + 1 :] if rng.random() < inside_p
    ]
    edges += [
        (u, v) for i, u in enumerate(other) for v in other[i + 1 :] if rng.random() < inside_p
    ]
    cross = [(u, v) for u in side for v in other]
    edges += rng.sample(cross, k)
    return SimpleGraph.from_edges(n, edges), frozenset(side)


def planted_cut(n: int, k: int, inside_p: float, rng: random.Random) -> SimpleGraph:
    g, _ = planted_cut_sides(n, k, inside_p, rng)
    return g


def clique_plus_path(clique: int, path: int) -> SimpleGraph:
    """A clique with a path of `path` extra vertices hanging off vertex 0."""
    if clique < 2:
        raise ValueError("clique needs at least two vertices")
    if path < 1:
        raise ValueError("path needs at least one vertex")
    k = clique
    edges = [(u, v) for u in range(k) for v in range(u + 1, k)]
    prev = 0
    for i in range(path):
        edges.append((prev, k + i))
        prev = k + i
    return SimpleGraph.from_edges(k + path, edges)


GENERATOR_KINDS = ("gnp", "barbell", "cycle", "planted_cut", "clique_plus_path")


def generate(kind: str, params: dict, seed: int) -> SimpleGraph:
    """Dispatch to a named generator; raises ValueError on bad parameters."""
    rng = random.Random(seed)
    if kind == "gnp":
        return gnp(int(params["n"]), float(params["p"]), rng)
    if kind == "barbell":
        return barbell(int(params["clique"]))
    if kind == "cycle":
        return cycle(int(params["n"]))
    if kind == "planted_cut":
        return planted_cut(
            int(params["n"]), int(params["k"]), float(params.get("inside_p", 0.6)), rng
        )
    if kind == "clique_plus_path":
        return clique_plus_path(int(params["clique"]), int(params.get("path", 3)))
    raise ValueError(f"unknown generator kind {kind!r}; choose from {GENERATOR_KINDS}")


# ---------------------------------------------------------------------------
# serialization
#
# Plain edge list: a header line "n m" then m lines "u v" with 0-based ids,
# u < v, rows sorted ascending, LF newlines. The weighted variant appends
# "num den" so Fraction weights round-trip exactly.


def write_edge_list(g: SimpleGraph, path: str) -> None:
    lines = [f"{g.n} {g.m}"]
    lines += [f"{u} {v}" for u, v in sorted(g.edges)]
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def read_edge_list(path: str) -> SimpleGraph:
    with open(path) as fh:
        tokens = fh.read().split()
    if len(tokens) < 2:
        raise ValueError(f"{path}: missing header")
    n, m = int(tokens[0]), int(tokens[1])
    body = tokens[2:]
    if len(body) != 2 * m:
        raise ValueError(f"{path}: expected {m} edges, found {len(body) // 2}")
    edges = [(int(body[2 * i]), int(body[2 * i + 1])) for i in range(m)]
    g = SimpleGraph.from_edges(n, edges)
    if g.m != m:
        raise ValueError(f"{path}: duplicate edges in input")
    return g


def write_weighted_edge_list(g: WeightedGraph, path: str) -> None:
    lines = [f"{g.n} {g.m}"]
    for (u, v), w in sorted(g.weights.items()):
        f = Fraction(w)
        lines.append(f"{u} {v} {f.numerator} {f.denominator}")
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def read_weighted_edge_list(path: str) -> WeightedGraph:
    with open(path) as fh:
        tokens = fh.read().split()
    if len(tokens) < 2:
        raise ValueError(f"{path}: missing header")
    n, m = int(tokens[0]), int(tokens[1])
    body = tokens[2:]
    if len(body) != 4 * m:
        raise ValueError(f"{path}: expected {m} weighted edges")
    weights: dict[tuple[int, int], Weight] = {}
    for i in range(m):
        u, v = int(body[4 * i]), int(body[4 * i + 1])
        num, den = int(body[4 * i + 2]), int(body[4 * i + 3])
        w = Fraction(num, den)
        weights[normalize_edge(u, v)] = int(w) if w.denominator == 1 else w
    return WeightedGraph(n, weights)
