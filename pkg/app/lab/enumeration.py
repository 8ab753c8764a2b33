# app/lab/enumeration.py
"""
Exhaustive corpora of small graphs.

Up to isomorphism:
 - all_trees(n)          networkx.nonisomorphic_trees, up to caps.trees
 - all_connected(n)      networkx graph atlas for n <= 7; n = 8 grows every connected
                         7-vertex graph by one vertex and deduplicates
Labeled:
 - labeled_trees(n)      Pruefer sequences
 - labeled_connected(n)  every edge subset of K_n, connectivity filtered

canonical_form(g) is an exact permutation minimisation restricted to degree-refined
vertex classes; dedup(graphs) keeps the first graph of every canonical class.
"""
import itertools
import logging
from collections import defaultdict
from typing import Dict, Iterable, Iterator, List, Optional, Tuple

import networkx as nx
from tqdm import tqdm

from app.config import Caps, get_settings
from app.core.graph import Graph, build_graph, complement_edges, from_networkx
from app.utils.errors import CapExceededError, FamilySpecError

logger = logging.getLogger("dimforce.lab.enumeration")

# Pruefer enumeration grows as n^(n-2)
LABELED_TREE_CAP = 8


def all_trees(n: int, caps: Optional[Caps] = None) -> Iterator[Graph]:
    caps = caps or get_settings().caps()
    if n < 2:
        raise FamilySpecError(f"all_trees needs n >= 2 (got {n})")
    if n > caps.trees:
        raise CapExceededError(n, caps.trees, "tree enumeration")
    for T in nx.nonisomorphic_trees(n):
        yield from_networkx(T)


def _atlas_connected(n: int) -> List[Graph]:
    return [
        from_networkx(G)
        for G in nx.graph_atlas_g()
        if G.number_of_nodes() == n and nx.is_connected(G)
    ]


def _bucket_key(G: nx.Graph) -> Tuple:
    degrees = tuple(sorted(d for _, d in G.degree()))
    return (G.number_of_nodes(), G.number_of_edges(), degrees, nx.weisfeiler_lehman_graph_hash(G))


def isomorphism_classes(graphs: Iterable[Graph], progress: bool = False) -> List[Graph]:
    """
    First representative of every isomorphism class, in input order. Graphs are bucketed
    by a cheap invariant signature; exact checks run only inside a bucket.
    """
    buckets: Dict[Tuple, List[nx.Graph]] = defaultdict(list)
    reps: List[Graph] = []
    for g in tqdm(graphs, disable=not progress, desc="dedup", unit="graph"):
        G = g.to_networkx()
        bucket = buckets[_bucket_key(G)]
        if any(nx.is_isomorphic(G, H) for H in bucket):
            continue
        bucket.append(G)
        reps.append(g)
    return reps


def _grow_by_one_vertex(smaller: List[Graph]) -> Iterator[Graph]:
    # every connected graph has a vertex whose deletion leaves it connected
    for h in smaller:
        n = h.n
        for mask in range(1, 1 << n):
            extra = [(v, n) for v in range(n) if mask >> v & 1]
            yield build_graph(n + 1, list(h.edges) + extra)


def all_connected(n: int, big: bool = False, caps: Optional[Caps] = None, progress: bool = False) -> List[Graph]:
    caps = caps or get_settings().caps()
    limit = caps.enumeration_big if big else caps.enumeration
    if n < 1:
        raise FamilySpecError(f"all_connected needs n >= 1 (got {n})")
    if n > limit:
        raise CapExceededError(n, limit, "connected-graph enumeration" + ("" if big else " (try --big)"))
    if n <= 7:
        return _atlas_connected(n)
    if n > 8:
        raise CapExceededError(n, 8, "connected-graph enumeration")
    logger.info("growing connected graphs on %d vertices from the 7-vertex atlas", n)
    return isomorphism_classes(_grow_by_one_vertex(_atlas_connected(7)), progress=progress)


def labeled_trees(n: int) -> Iterator[Graph]:
    if n < 2:
        raise FamilySpecError(f"labeled trees need n >= 2 (got {n})")
    if n > LABELED_TREE_CAP:
        raise CapExceededError(n, LABELED_TREE_CAP, "labeled tree enumeration")
    for seq in itertools.product(range(n), repeat=n - 2):
        yield from_networkx(nx.from_prufer_sequence(list(seq)))


def labeled_connected(n: int, caps: Optional[Caps] = None) -> Iterator[Graph]:
    caps = caps or get_settings().caps()
    if n > caps.labeled_enumeration:
        raise CapExceededError(n, caps.labeled_enumeration, "labeled connected-graph enumeration")
    pairs = list(itertools.combinations(range(n), 2))
    for bits in range(1 << len(pairs)):
        if bin(bits).count("1") < n - 1:
            continue
        g = build_graph(n, [p for i, p in enumerate(pairs) if bits >> i & 1])
        if g.is_connected:
            yield g


def _refined_classes(g: Graph) -> List[List[int]]:
    """Vertices grouped by (degree, sorted neighbour degrees), groups in sorted key order."""
    key = {v: (g.degree(v), tuple(sorted(g.degree(w) for w in g.adjacency[v]))) for v in range(g.n)}
    groups: Dict[Tuple, List[int]] = defaultdict(list)
    for v in range(g.n):
        groups[key[v]].append(v)
    return [groups[k] for k in sorted(groups)]


def canonical_form(g: Graph) -> Tuple[int, Tuple[Tuple[int, int], ...]]:
    """
    Lexicographically least relabelled edge list over every vertex order that lists the
    degree-refined classes in a fixed sequence. Isomorphic graphs get equal forms.
    """
    classes = _refined_classes(g)
    best = None
    for parts in itertools.product(*(itertools.permutations(c) for c in classes)):
        order = [v for part in parts for v in part]
        position = {v: i for i, v in enumerate(order)}
        edges = tuple(sorted(tuple(sorted((position[u], position[v]))) for u, v in g.edges))
        if best is None or edges < best:
            best = edges
    return g.n, best or ()


def dedup(graphs: Iterable[Graph]) -> List[Graph]:
    seen = set()
    kept = []
    for g in graphs:
        form = canonical_form(g)
        if form not in seen:
            seen.add(form)
            kept.append(g)
    return kept


def tree_edge_pairs(
    n: int,
    labeled: bool = False,
    caps: Optional[Caps] = None,
) -> Iterator[Tuple[Graph, Tuple[int, int]]]:
    """Every tree on n vertices paired with every edge of its complement."""
    caps = caps or get_settings().caps()
    if n > caps.t_plus_e:
        raise CapExceededError(n, caps.t_plus_e, "T + e enumeration")
    trees = labeled_trees(n) if labeled else all_trees(n, caps=caps)
    for t in trees:
        for e in complement_edges(t):
            yield t, e
