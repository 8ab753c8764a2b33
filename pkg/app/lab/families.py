# app/lab/families.py
"""
Named graph families and the NAME:ARGS spec grammar.

    path:N  cycle:N  complete:N  complete_bipartite:S,T  star:K  spider:L1,L2,...
    grid:M,N  c4_bouquet:K  caterpillar:K[,H]
    all_trees:N|A-B  all_connected:N|A-B  t_plus_e:N|A-B

Constructions are deterministic: the same spec always yields the same edge lists in the
same order.
"""
import logging
from typing import Callable, Dict, Iterator, List, Optional, Tuple

import networkx as nx

from app.config import Caps, get_settings
from app.core.graph import Graph, build_graph, from_networkx
from app.lab import enumeration
from app.models.schemas import FamilySpec
from app.utils.errors import FamilySpecError

logger = logging.getLogger("dimforce.lab.families")

RANGE_FAMILIES = ("all_trees", "all_connected", "t_plus_e")


def path(n: int) -> Graph:
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    return from_networkx(nx.complete_graph(n))


def complete_bipartite(s: int, t: int) -> Graph:
    """Parts 0..s-1 and s..s+t-1."""
    return from_networkx(nx.complete_bipartite_graph(s, t))


def star(k: int) -> Graph:
    return build_graph(k + 1, [(0, i) for i in range(1, k + 1)])


def spider(*legs: int) -> Graph:
    """Centre 0; each leg is a path numbered outwards from the centre."""
    edges = []
    nxt = 1
    for length in legs:
        prev = 0
        for _ in range(length):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return build_graph(nxt, edges)


def grid(m: int, n: int) -> Graph:
    """P_m x P_n; vertex (i, j) gets index i*n + j."""
    return from_networkx(nx.grid_2d_graph(m, n))


def c4_bouquet(k: int) -> Graph:
    """
    Centre 0 with pendant leaves 1 and 2, plus k four-cycles through the centre that
    share nothing else.
    """
    edges = [(0, 1), (0, 2)]
    for i in range(k):
        a, b, c = 3 + 3 * i, 4 + 3 * i, 5 + 3 * i
        edges += [(0, a), (a, b), (b, c), (c, 0)]
    return build_graph(3 + 3 * k, edges)


def caterpillar(k: int, h: int = 1) -> Graph:
    """Spine 0..k-1; every spine vertex carries a pendant path of h vertices."""
    edges = [(i, i + 1) for i in range(k - 1)]
    nxt = k
    for i in range(k):
        prev = i
        for _ in range(h):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return build_graph(nxt, edges)


def double_spider() -> Graph:
    """Major vertices 0 and 4 joined through 1-2-3; leaves 5, 6 on 0 and 7, 8 on 4."""
    return build_graph(9, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 5), (0, 6), (4, 7), (4, 8)])


# name -> (arity check, parameter form, builder)
_SINGLE: Dict[str, Tuple[Callable[[List[int]], Optional[str]], str, Callable[..., Graph]]] = {
    "path": (lambda p: None if len(p) == 1 and p[0] >= 1 else "N >= 1", "path:N", path),
    "cycle": (lambda p: None if len(p) == 1 and p[0] >= 3 else "N >= 3", "cycle:N", cycle),
    "complete": (lambda p: None if len(p) == 1 and p[0] >= 1 else "N >= 1", "complete:N", complete),
    "complete_bipartite": (
        lambda p: None if len(p) == 2 and min(p) >= 1 else "S,T >= 1",
        "complete_bipartite:S,T",
        complete_bipartite,
    ),
    "star": (lambda p: None if len(p) == 1 and p[0] >= 1 else "K >= 1", "star:K", star),
    "spider": (
        lambda p: None if len(p) >= 1 and min(p) >= 1 else "leg lengths >= 1",
        "spider:L1,L2,...",
        spider,
    ),
    "grid": (lambda p: None if len(p) == 2 and min(p) >= 1 else "M,N >= 1", "grid:M,N", grid),
    "c4_bouquet": (lambda p: None if len(p) == 1 and p[0] >= 1 else "K >= 1", "c4_bouquet:K", c4_bouquet),
    "caterpillar": (
        lambda p: None if len(p) in (1, 2) and p[0] >= 1 and min(p) >= 0 else "K >= 1, H >= 0",
        "caterpillar:K[,H]",
        caterpillar,
    ),
}

_RANGE_MIN = {"all_trees": 2, "all_connected": 1, "t_plus_e": 3}

FAMILY_FORMS = [form for _, form, _ in _SINGLE.values()] + [f"{name}:N|A-B" for name in RANGE_FAMILIES]


def _invalid(text: str, reason: str) -> FamilySpecError:
    return FamilySpecError(f"bad family spec {text!r}: {reason}; valid forms: {', '.join(FAMILY_FORMS)}")


def parse_family(text: str) -> FamilySpec:
    name, _, args = text.strip().partition(":")
    name = name.strip()
    if name in RANGE_FAMILIES:
        lo_text, dash, hi_text = args.partition("-")
        try:
            lo = int(lo_text)
            hi = int(hi_text) if dash else lo
        except ValueError:
            raise _invalid(text, "expected N or A-B")
        if lo < _RANGE_MIN[name] or hi < lo:
            raise _invalid(text, f"need {_RANGE_MIN[name]} <= A <= B")
        return FamilySpec(name=name, params=[lo, hi])
    if name not in _SINGLE:
        raise _invalid(text, f"unknown family {name!r}")
    try:
        params = [int(x) for x in args.split(",")] if args.strip() else []
    except ValueError:
        raise _invalid(text, "parameters must be integers")
    problem = _SINGLE[name][0](params)
    if problem:
        raise _invalid(text, problem)
    return FamilySpec(name=name, params=params)


def generate(
    spec,
    labeled: bool = False,
    big: bool = False,
    caps: Optional[Caps] = None,
    progress: bool = False,
) -> Iterator[Graph]:
    """
    Stream the graphs of a family. `spec` is a FamilySpec or its text form. For
    t_plus_e the stream is the unicyclic graphs T + e; use tree_edge_corpus for the
    (T, e) pairs. labeled=True switches the exhaustive families to labeled enumeration.
    """
    if isinstance(spec, str):
        spec = parse_family(spec)
    caps = caps or get_settings().caps()
    if spec.name in _SINGLE:
        yield _SINGLE[spec.name][2](*spec.params)
        return
    lo, hi = spec.params
    for n in range(lo, hi + 1):
        if spec.name == "all_trees":
            yield from enumeration.labeled_trees(n) if labeled else enumeration.all_trees(n, caps=caps)
        elif spec.name == "all_connected":
            if labeled:
                yield from enumeration.labeled_connected(n, caps=caps)
            else:
                yield from enumeration.all_connected(n, big=big, caps=caps, progress=progress)
        else:
            for t, (u, v) in enumeration.tree_edge_pairs(n, labeled=labeled, caps=caps):
                yield t.add_edge(u, v)


def tree_edge_corpus(
    spec,
    labeled: bool = False,
    caps: Optional[Caps] = None,
) -> Iterator[Tuple[Graph, Tuple[int, int]]]:
    if isinstance(spec, str):
        spec = parse_family(spec)
    if spec.name != "t_plus_e":
        raise FamilySpecError(f"{spec} is not a t_plus_e spec")
    lo, hi = spec.params
    for n in range(lo, hi + 1):
        yield from enumeration.tree_edge_pairs(n, labeled=labeled, caps=caps)


def single_graph(text: str) -> Graph:
    """The one graph a constructive spec names; exhaustive families are rejected."""
    spec = parse_family(text)
    if spec.name not in _SINGLE:
        raise FamilySpecError(f"{text!r} names a corpus, not a single graph")
    return next(generate(spec))


def is_dim_n_minus_2_family(g: Graph) -> bool:
    """
    K_{s,t}, K_s + complement(K_t) with t >= 2, or K_s + (K_1 u K_t), recognised through the
    components of the complement: two cliques, or isolated vertices plus one clique of
    order >= 2, or isolated vertices plus one star.
    """
    if g.n < 4 or not g.is_connected:
        return False
    H = nx.complement(g.to_networkx())
    comps = [H.subgraph(c) for c in nx.connected_components(H)]
    sizes = [c.number_of_nodes() for c in comps]

    def is_clique(c) -> bool:
        k = c.number_of_nodes()
        return c.number_of_edges() == k * (k - 1) // 2

    def is_star(c) -> bool:
        k = c.number_of_nodes()
        return k >= 3 and c.number_of_edges() == k - 1 and max(d for _, d in c.degree()) == k - 1

    if len(comps) == 2 and all(is_clique(c) for c in comps):
        return True
    big = [c for c, size in zip(comps, sizes) if size > 1]
    if len(big) != 1 or len(comps) < 2:
        return False
    return is_clique(big[0]) or is_star(big[0])
