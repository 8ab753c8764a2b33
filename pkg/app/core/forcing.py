# app/core/forcing.py
"""
Color-change rule engine and the forcing-side parameters.

Provides:
 - forcing_closure(g, S) -> ForcingTrace (synchronous rounds, index-ordered events)
 - forcing_closure_random_order(g, S, rng) -> final black set under a random legal order
 - forcing_chains(trace)
 - is_zero_forcing(g, S), one_step_forcing(g, S), one_step_resolving_check(g, S)
 - zero_forcing_bruteforce(g, ...) -> (Z, witness)
 - min_degree_bound(g)
 - induced_paths(g), path_cover_bruteforce(g, ...) -> (P, PathCover)
 - check_Z_perturbation(g, ...) -> PerturbationReport
"""
import logging
import random
from dataclasses import dataclass, field
from functools import partial
from typing import Dict, List, Optional, Sequence, Set, Tuple

from app.config import get_settings
from app.core.graph import Graph, all_pairs_distances, require_parameter_graph
from app.core.resolvability import is_resolving
from app.core.subsets import lowest_bit, mask_of, minimum_satisfying, popcount, vertices_of
from app.utils.errors import CapExceededError, ConstructionError

logger = logging.getLogger("dimforce.core.forcing")


@dataclass(frozen=True)
class ForceEvent:
    forcer: int
    forced: int
    round: int


@dataclass(frozen=True)
class ForcingTrace:
    initial: Tuple[int, ...]
    events: Tuple[ForceEvent, ...]
    final: Tuple[int, ...]

    @property
    def rounds(self) -> int:
        return self.events[-1].round if self.events else 0


@dataclass(frozen=True)
class PathCover:
    """Vertex-disjoint induced paths covering V; each block lists its path in order."""

    blocks: Tuple[Tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return len(self.blocks)

    def vertex_sets(self) -> List[Tuple[int, ...]]:
        return [tuple(sorted(b)) for b in self.blocks]


# ---------------------------------------------------------------------------
# closure


def closure_mask(g: Graph, black: int) -> int:
    """Fixpoint of the color-change rule as a bitset."""
    changed = True
    while changed:
        changed = False
        pending = black
        while pending:
            v = lowest_bit(pending)
            pending &= pending - 1
            white = g.masks[v] & ~black
            if white and white & (white - 1) == 0:
                black |= white
                changed = True
    return black


def forcing_closure(g: Graph, S: Sequence[int]) -> ForcingTrace:
    """
    Apply the rule to a fixpoint in synchronous rounds. Within a round, forcers fire in
    index order against the colouring at the start of the round; a vertex already forced
    earlier in the same round is not forced twice.
    """
    black = mask_of(S)
    events: List[ForceEvent] = []
    rnd = 0
    while True:
        rnd += 1
        start = black
        fired = False
        for v in vertices_of(start):
            white = g.masks[v] & ~start
            if white and white & (white - 1) == 0 and not black & white:
                black |= white
                events.append(ForceEvent(v, lowest_bit(white), rnd))
                fired = True
        if not fired:
            break
    return ForcingTrace(initial=tuple(sorted(set(S))), events=tuple(events), final=vertices_of(black))


def forcing_closure_random_order(g: Graph, S: Sequence[int], rng: random.Random) -> Tuple[int, ...]:
    """Fire one uniformly chosen legal force at a time; returns the final black set."""
    black = mask_of(S)
    while True:
        eligible = []
        for v in vertices_of(black):
            white = g.masks[v] & ~black
            if white and white & (white - 1) == 0:
                eligible.append(white)
        if not eligible:
            return vertices_of(black)
        black |= rng.choice(eligible)


def forcing_chains(trace: ForcingTrace) -> List[Tuple[int, ...]]:
    """One maximal chain u1 -> u2 -> ... per initial black vertex."""
    forced_by: Dict[int, int] = {e.forcer: e.forced for e in trace.events}
    chains = []
    for start in trace.initial:
        chain = [start]
        while chain[-1] in forced_by:
            chain.append(forced_by[chain[-1]])
        chains.append(tuple(chain))
    return chains


def is_zero_forcing(g: Graph, S: Sequence[int]) -> bool:
    return closure_mask(g, mask_of(S)) == (1 << g.n) - 1


def one_step_forcing(g: Graph, S: Sequence[int]) -> bool:
    """True iff a single simultaneous round of forces turns V black."""
    black = mask_of(S)
    reached = black
    for v in vertices_of(black):
        white = g.masks[v] & ~black
        if white and white & (white - 1) == 0:
            reached |= white
    return reached == (1 << g.n) - 1


def one_step_resolving_check(g: Graph, S: Sequence[int], dm=None) -> bool:
    """
    One-round zero forcing. Whenever it holds, S must also resolve g; a one-step forcing
    set that does not resolve raises ConstructionError.
    """
    if not one_step_forcing(g, S):
        return False
    dm = dm if dm is not None else all_pairs_distances(g)
    if not is_resolving(g, dm, S):
        logger.error("one-step forcing set %s does not resolve graph %s", tuple(S), g.key)
        raise ConstructionError(f"one-step forcing set {tuple(S)} does not resolve graph {g.key}")
    return True


def min_degree_bound(g: Graph) -> int:
    return g.min_degree


def _forces_all(masks_graph: Graph, full: int, S: Tuple[int, ...]) -> bool:
    return closure_mask(masks_graph, mask_of(S)) == full


def zero_forcing_bruteforce(
    g: Graph,
    cap: Optional[int] = None,
    order: str = "lex",
    workers: int = 1,
) -> Tuple[int, Tuple[int, ...]]:
    """Exact Z(G); the search starts at max(1, delta(G)) since Z >= delta."""
    require_parameter_graph(g, "zero forcing number")
    cap = cap if cap is not None else get_settings().caps().brute_force
    if g.n > cap:
        raise CapExceededError(g.n, cap, "brute-force zero forcing number")
    predicate = partial(_forces_all, g, (1 << g.n) - 1)
    witness = minimum_satisfying(g.n, predicate, start=max(1, g.min_degree), order=order, workers=workers)
    assert witness is not None
    logger.debug("Z=%d witness=%s (n=%d, order=%s)", len(witness), witness, g.n, order)
    return len(witness), witness


# ---------------------------------------------------------------------------
# path covers


def induced_paths(g: Graph) -> List[Tuple[int, ...]]:
    """
    Every induced path once, oriented so its first vertex is smaller than its last.
    Single vertices count as paths.
    """
    found: Set[Tuple[int, ...]] = set()

    def extend(path: List[int], inside: int) -> None:
        last = path[-1]
        seq = tuple(path)
        found.add(seq if seq[0] <= seq[-1] else seq[::-1])
        # a new vertex may touch only the current end of the path
        before_last = inside & ~(1 << last)
        for w in sorted(g.adjacency[last]):
            if inside >> w & 1 or g.masks[w] & before_last:
                continue
            path.append(w)
            extend(path, inside | 1 << w)
            path.pop()

    for v in range(g.n):
        extend([v], 1 << v)
    return sorted(found, key=lambda p: (tuple(sorted(p)), p))


def is_induced_path(g: Graph, block: Sequence[int]) -> bool:
    block = list(block)
    members = set(block)
    if len(members) != len(block):
        return False
    for i, u in enumerate(block):
        for j in range(i + 1, len(block)):
            if g.has_edge(u, block[j]) != (j == i + 1):
                return False
    return True


def is_path_cover(g: Graph, blocks: Sequence[Sequence[int]]) -> bool:
    seen: Set[int] = set()
    for block in blocks:
        if not block or not is_induced_path(g, block) or seen & set(block):
            return False
        seen |= set(block)
    return seen == set(range(g.n))


def path_cover_bruteforce(g: Graph, cap: Optional[int] = None) -> Tuple[int, PathCover]:
    """
    Exact P(G). Blocks are chosen for the lowest uncovered vertex with candidates tried in
    lexicographic order of their sorted vertex sets, so the first cover found at the
    minimum size is the lexicographically least one.
    """
    cap = cap if cap is not None else get_settings().caps().path_cover
    if g.n > cap:
        raise CapExceededError(g.n, cap, "brute-force path cover")
    if g.n == 0:
        return 0, PathCover(())

    by_min: List[List[Tuple[int, Tuple[int, ...]]]] = [[] for _ in range(g.n)]
    for p in induced_paths(g):
        by_min[min(p)].append((mask_of(p), p))
    full = (1 << g.n) - 1
    dead: Set[Tuple[int, int]] = set()

    def search(covered: int, budget: int, chosen: List[Tuple[int, ...]]) -> bool:
        if covered == full:
            return True
        if budget == 0 or (covered, budget) in dead:
            return False
        u = lowest_bit(~covered & full)
        for pmask, p in by_min[u]:
            if pmask & covered:
                continue
            chosen.append(p)
            if search(covered | pmask, budget - 1, chosen):
                return True
            chosen.pop()
        dead.add((covered, budget))
        return False

    for k in range(1, g.n + 1):
        chosen: List[Tuple[int, ...]] = []
        if search(0, k, chosen):
            logger.debug("P=%d cover=%s (n=%d)", k, chosen, g.n)
            return k, PathCover(tuple(chosen))
    raise AssertionError("singletons always cover V")


# ---------------------------------------------------------------------------
# perturbation


@dataclass
class PerturbationReport:
    z: int
    vertex_results: Dict[int, int] = field(default_factory=dict)
    edge_results: Dict[Tuple[int, int], int] = field(default_factory=dict)
    skipped: List[str] = field(default_factory=list)
    violations: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def check_Z_perturbation(g: Graph, cap: Optional[int] = None) -> PerturbationReport:
    """
    Z(G) - 1 <= Z(G - v) <= Z(G) + 1 and Z(G) - 1 <= Z(G - e) <= Z(G) + 1 over every
    deletion that leaves a connected graph of order >= 2; the rest are listed as skipped.
    """
    z, _ = zero_forcing_bruteforce(g, cap=cap)
    report = PerturbationReport(z=z)
    for v in range(g.n):
        h = g.remove_vertex(v)
        if h.n < 2 or not h.is_connected:
            report.skipped.append(f"vertex {v}")
            continue
        zv, _ = zero_forcing_bruteforce(h, cap=cap)
        report.vertex_results[v] = zv
        if not z - 1 <= zv <= z + 1:
            report.violations.append(f"Z(G-{v})={zv} outside [{z - 1}, {z + 1}]")
    for u, v in g.edges:
        h = g.remove_edge(u, v)
        if not h.is_connected:
            report.skipped.append(f"edge {u}-{v}")
            continue
        ze, _ = zero_forcing_bruteforce(h, cap=cap)
        report.edge_results[(u, v)] = ze
        if not z - 1 <= ze <= z + 1:
            report.violations.append(f"Z(G-{u}{v})={ze} outside [{z - 1}, {z + 1}]")
    if report.violations:
        logger.error("Z perturbation violations on %s: %s", g.key, report.violations)
    return report
