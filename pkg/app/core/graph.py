# app/core/graph.py
"""
Graph substrate every other module consumes.

Provides:
 - Graph (immutable, dense 0..n-1 vertex indices, bitset adjacency)
 - build_graph(n, edges)
 - DistanceMatrix / all_pairs_distances(g)
 - GraphClass / classify(g), cycle_rank(g), even_cycle_rank(g)
 - unique_cycle(g), cycle_subtree_roots(g, cycle)
 - twins(g), complement_edges(g)
 - graph6 and networkx adapters

Graphs and distance matrices are immutable after construction and safe to share
between worker processes.
"""
import itertools
import logging
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from app.utils.errors import (
    DisconnectedGraphError,
    GraphClassError,
    GraphConstructionError,
    GraphOrderError,
)

logger = logging.getLogger("dimforce.core.graph")

Edge = Tuple[int, int]

# distance sentinel for vertices in different components
UNREACHABLE = -1


@dataclass(frozen=True)
class Graph:
    n: int
    edges: Tuple[Edge, ...]
    adjacency: Tuple[FrozenSet[int], ...] = field(repr=False, compare=False)
    masks: Tuple[int, ...] = field(repr=False, compare=False)

    @property
    def vertices(self) -> range:
        return range(self.n)

    @property
    def number_of_edges(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    @cached_property
    def degrees(self) -> Tuple[int, ...]:
        return tuple(len(nb) for nb in self.adjacency)

    @property
    def min_degree(self) -> int:
        return min(self.degrees) if self.n else 0

    @property
    def max_degree(self) -> int:
        return max(self.degrees) if self.n else 0

    def neighbors(self, v: int) -> FrozenSet[int]:
        return self.adjacency[v]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.masks[u] >> v & 1)

    @cached_property
    def is_connected(self) -> bool:
        if self.n == 0:
            return False
        seen = 1
        frontier = 1
        while frontier:
            nxt = 0
            for v in _bits(frontier):
                nxt |= self.masks[v]
            frontier = nxt & ~seen
            seen |= frontier
        return seen == (1 << self.n) - 1

    @property
    def key(self) -> str:
        """Stable textual identity: order plus the sorted edge list."""
        body = ";".join(f"{u}-{v}" for u, v in self.edges)
        return f"{self.n}:{body}"

    def add_edge(self, u: int, v: int) -> "Graph":
        return build_graph(self.n, list(self.edges) + [(u, v)])

    def remove_edge(self, u: int, v: int) -> "Graph":
        e = (min(u, v), max(u, v))
        if e not in set(self.edges):
            raise GraphConstructionError(e, "edge not present")
        return build_graph(self.n, [x for x in self.edges if x != e])

    def remove_vertex(self, v: int) -> "Graph":
        """Delete v and relabel the remaining vertices 0..n-2 preserving order."""
        relabel = {u: (u if u < v else u - 1) for u in range(self.n) if u != v}
        kept = [(relabel[a], relabel[b]) for a, b in self.edges if v not in (a, b)]
        return build_graph(self.n - 1, kept)

    def to_networkx(self) -> nx.Graph:
        G = nx.Graph()
        G.add_nodes_from(range(self.n))
        G.add_edges_from(self.edges)
        return G


def _bits(mask: int):
    v = 0
    while mask:
        if mask & 1:
            yield v
        mask >>= 1
        v += 1


def build_graph(n: int, edges: Iterable[Sequence[int]]) -> Graph:
    """Validate and normalise an edge list into an immutable Graph."""
    if not isinstance(n, int) or n < 0:
        raise GraphConstructionError((-1, -1), f"vertex count must be a non-negative integer, got {n!r}")
    normalized = set()
    for pair in edges:
        if len(pair) != 2:
            raise GraphConstructionError(tuple(pair), "an edge needs exactly two endpoints")
        u, v = int(pair[0]), int(pair[1])
        if u == v:
            raise GraphConstructionError((u, v), "self-loop")
        if not (0 <= u < n and 0 <= v < n):
            raise GraphConstructionError((u, v), f"index out of range 0..{n - 1}")
        normalized.add((min(u, v), max(u, v)))
    ordered = tuple(sorted(normalized))
    adj: List[set] = [set() for _ in range(n)]
    for u, v in ordered:
        adj[u].add(v)
        adj[v].add(u)
    masks = tuple(sum(1 << w for w in nb) for nb in adj)
    return Graph(n=n, edges=ordered, adjacency=tuple(frozenset(nb) for nb in adj), masks=masks)


def from_networkx(G: nx.Graph) -> Graph:
    """Relabel an arbitrary networkx graph onto 0..n-1 (sorted node order when sortable)."""
    try:
        nodes = sorted(G.nodes())
    except TypeError:
        nodes = list(G.nodes())
    index = {node: i for i, node in enumerate(nodes)}
    return build_graph(len(nodes), [(index[a], index[b]) for a, b in G.edges() if a != b])


def to_graph6(g: Graph) -> str:
    return nx.to_graph6_bytes(g.to_networkx(), nodes=list(range(g.n)), header=False).decode("ascii").strip()


def from_graph6(text: str) -> Graph:
    return from_networkx(nx.from_graph6_bytes(text.strip().encode("ascii")))


def require_connected(g: Graph, what: str = "this operation") -> None:
    if not g.is_connected:
        raise DisconnectedGraphError(what)


def require_parameter_graph(g: Graph, what: str = "graph parameters") -> None:
    """The parameters are defined for connected graphs of order at least two."""
    if g.n < 2:
        raise GraphOrderError(g.n, what)
    require_connected(g, what)


# ---------------------------------------------------------------------------
# distances


@dataclass(frozen=True, eq=False)
class DistanceMatrix:
    """All-pairs hop counts; UNREACHABLE marks pairs in different components."""

    matrix: np.ndarray

    def __post_init__(self):
        self.matrix.setflags(write=False)

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    def __getitem__(self, uv: Tuple[int, int]) -> int:
        return int(self.matrix[uv])

    def reachable(self, u: int, v: int) -> bool:
        return self.matrix[u, v] != UNREACHABLE

    @cached_property
    def columns(self) -> Tuple[Tuple[int, ...], ...]:
        """columns[w][v] = d(v, w); zip over selected columns yields metric codes."""
        return tuple(tuple(int(x) for x in row) for row in self.matrix)

    @property
    def diameter(self) -> int:
        if np.any(self.matrix == UNREACHABLE):
            raise DisconnectedGraphError("diameter")
        return int(self.matrix.max()) if self.n else 0


def all_pairs_distances(g: Graph) -> DistanceMatrix:
    """Breadth-first search from every vertex."""
    dist = np.full((g.n, g.n), UNREACHABLE, dtype=np.int32)
    for s in range(g.n):
        row = dist[s]
        row[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in g.adjacency[u]:
                if row[w] == UNREACHABLE:
                    row[w] = row[u] + 1
                    queue.append(w)
    return DistanceMatrix(dist)


# ---------------------------------------------------------------------------
# classification


@dataclass(frozen=True)
class GraphClass:
    kind: str  # "path" | "tree" | "unicyclic" | "cyclic"
    r: int

    @property
    def is_tree(self) -> bool:
        return self.r == 0

    def __str__(self) -> str:
        return f"cyclic({self.r})" if self.kind == "cyclic" else self.kind


def cycle_rank(g: Graph) -> int:
    require_connected(g, "cycle rank")
    return g.number_of_edges - g.n + 1


def has_even_cycle(g: Graph) -> bool:
    return any(len(c) % 2 == 0 for c in nx.simple_cycles(g.to_networkx()))


def even_cycle_rank(g: Graph, max_edges: int = 16) -> Optional[int]:
    """
    Fewest edge deletions leaving no even cycle, by exhaustive edge-subset search.
    None when g has more than `max_edges` edges.
    """
    require_connected(g, "even cycle rank")
    if g.number_of_edges > max_edges:
        return None
    for k in range(g.number_of_edges + 1):
        for dropped in itertools.combinations(g.edges, k):
            gone = set(dropped)
            if not has_even_cycle(build_graph(g.n, [e for e in g.edges if e not in gone])):
                return k
    return g.number_of_edges


def classify(g: Graph) -> GraphClass:
    r = cycle_rank(g)
    if r == 0:
        return GraphClass("path" if g.max_degree <= 2 else "tree", 0)
    if r == 1:
        return GraphClass("unicyclic", 1)
    return GraphClass("cyclic", r)


def unique_cycle(g: Graph) -> Tuple[int, ...]:
    """
    Vertices of the unique cycle in cyclic order, starting at the lowest index and
    continuing towards its smaller cycle neighbour.
    """
    if classify(g).kind != "unicyclic":
        raise GraphClassError("unique_cycle requires a unicyclic graph")
    degree = list(g.degrees)
    alive = [True] * g.n
    leaves = deque(v for v in range(g.n) if degree[v] == 1)
    while leaves:
        v = leaves.popleft()
        alive[v] = False
        for w in g.adjacency[v]:
            if alive[w]:
                degree[w] -= 1
                if degree[w] == 1:
                    leaves.append(w)
    on_cycle = {v for v in range(g.n) if alive[v]}
    start = min(on_cycle)
    prev, cur = start, min(w for w in g.adjacency[start] if w in on_cycle)
    order = [start]
    while cur != start:
        order.append(cur)
        prev, cur = cur, next(w for w in g.adjacency[cur] if w in on_cycle and w != prev)
    return tuple(order)


def cycle_subtree_roots(g: Graph, cycle: Sequence[int]) -> Dict[int, int]:
    """
    Map every vertex to the cycle vertex rooting its component of G - E(C)
    (the subgraph hanging off that cycle vertex).
    """
    on_cycle = set(cycle)
    root: Dict[int, int] = {}
    for c in cycle:
        root[c] = c
        queue = deque([c])
        while queue:
            u = queue.popleft()
            for w in g.adjacency[u]:
                if w not in root and w not in on_cycle:
                    root[w] = c
                    queue.append(w)
    return root


# ---------------------------------------------------------------------------
# twins and complements


def twins(g: Graph) -> List[Edge]:
    """All pairs u < v with N(u) - {v} == N(v) - {u} (adjacent or not)."""
    out = []
    for u in range(g.n):
        for v in range(u + 1, g.n):
            if g.masks[u] & ~(1 << v) == g.masks[v] & ~(1 << u):
                out.append((u, v))
    return out


def complement_edges(g: Graph) -> List[Edge]:
    return [(u, v) for u in range(g.n) for v in range(u + 1, g.n) if not g.has_edge(u, v)]


def shortest_path(g: Graph, dm: DistanceMatrix, source: int, target: int) -> Optional[List[int]]:
    """A shortest source-target path, stepping to the lowest-index neighbour at each hop."""
    if not dm.reachable(source, target):
        return None
    path = [source]
    cur = source
    while cur != target:
        cur = min(w for w in g.adjacency[cur] if dm[w, target] == dm[cur, target] - 1)
        path.append(cur)
    return path
