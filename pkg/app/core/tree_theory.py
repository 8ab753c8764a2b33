# app/core/tree_theory.py
"""
Structural profiles and the closed-form / constructive side of the theory.

Provides:
 - structural_profile(g, dm) -> StructuralProfile
 - tree_metric_dimension(t)
 - tree_basis_construction(t, profile)
 - tree_zero_forcing_construction(t, profile) -> TreeZeroForcing
 - dim_equals_Z_tree_predicate(t, profile), forbidden_vertices(t, profile)
 - zfs_structure_audit(t, S, profile) -> AuditReport
 - unicyclic_resolving_construction(t, e) -> UnicyclicBasis
 - separates_cycle_subtrees(g, dm, cycle, anchors)

Terminal vertices follow the strict rule: an end-vertex belongs to a major vertex only
when that major vertex is strictly nearer than every other one.
"""
import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from app.config import get_settings
from app.core.forcing import PathCover, is_zero_forcing, path_cover_bruteforce, zero_forcing_bruteforce
from app.core.graph import (
    DistanceMatrix,
    Graph,
    all_pairs_distances,
    classify,
    cycle_subtree_roots,
    require_connected,
    require_parameter_graph,
    shortest_path,
    unique_cycle,
)
from app.core.resolvability import is_resolving
from app.utils.errors import (
    CapExceededError,
    ConstructionError,
    GraphClassError,
    GraphConstructionError,
    PreconditionError,
)

logger = logging.getLogger("dimforce.core.tree_theory")

END_VERTEX = "end-vertex"
EXTERIOR_DEGREE_2 = "exterior-degree-2"
INTERIOR_DEGREE_2 = "interior-degree-2"
MAJOR = "major"
EMV = "emv"
ISOLATED = "isolated"


@dataclass(frozen=True)
class StructuralProfile:
    vertex_class: Tuple[str, ...]
    # major vertex -> its terminal vertices (every major vertex has an entry)
    terminals: Mapping[int, Tuple[int, ...]]
    # emv -> one leg per terminal vertex: the path from the terminal vertex up to,
    # but excluding, the emv
    legs: Mapping[int, Tuple[Tuple[int, ...], ...]]
    sigma: int
    ex: int

    @property
    def majors(self) -> Tuple[int, ...]:
        return tuple(sorted(self.terminals))

    @property
    def emvs(self) -> Tuple[int, ...]:
        return tuple(v for v in self.majors if self.terminals[v])

    def ter(self, v: int) -> int:
        return len(self.terminals.get(v, ()))

    def of_class(self, cls: str) -> Tuple[int, ...]:
        return tuple(v for v, c in enumerate(self.vertex_class) if c == cls)


def structural_profile(g: Graph, dm: Optional[DistanceMatrix] = None) -> StructuralProfile:
    require_connected(g, "structural profile")
    dm = dm if dm is not None else all_pairs_distances(g)
    majors = [v for v in range(g.n) if g.degree(v) >= 3]
    terminals: Dict[int, List[int]] = {v: [] for v in majors}
    for u in range(g.n):
        if g.degree(u) != 1 or not majors:
            continue
        best = min(dm[u, v] for v in majors)
        nearest = [v for v in majors if dm[u, v] == best]
        if len(nearest) == 1:
            terminals[nearest[0]].append(u)

    legs: Dict[int, Tuple[Tuple[int, ...], ...]] = {}
    exterior = set()
    for v, ends in terminals.items():
        if not ends:
            continue
        legs[v] = tuple(tuple(shortest_path(g, dm, ell, v)[:-1]) for ell in ends)
        for ell in ends:
            for x in range(g.n):
                if g.degree(x) == 2 and dm[ell, x] + dm[x, v] == dm[ell, v]:
                    exterior.add(x)

    classes = []
    for v in range(g.n):
        deg = g.degree(v)
        if deg == 0:
            classes.append(ISOLATED)
        elif deg == 1:
            classes.append(END_VERTEX)
        elif deg == 2:
            classes.append(EXTERIOR_DEGREE_2 if v in exterior else INTERIOR_DEGREE_2)
        else:
            classes.append(EMV if terminals[v] else MAJOR)

    sigma = sum(len(t) for t in terminals.values())
    ex = sum(1 for t in terminals.values() if t)
    return StructuralProfile(
        vertex_class=tuple(classes),
        terminals={v: tuple(sorted(t)) for v, t in terminals.items()},
        legs=legs,
        sigma=sigma,
        ex=ex,
    )


def _require_tree(t: Graph, what: str) -> str:
    require_parameter_graph(t, what)
    kind = classify(t).kind
    if kind not in ("path", "tree"):
        raise GraphClassError(f"{what} requires a tree (got {kind})")
    return kind


def tree_metric_dimension(t: Graph, profile: Optional[StructuralProfile] = None) -> int:
    if _require_tree(t, "tree metric dimension") == "path":
        return 1
    profile = profile or structural_profile(t)
    return profile.sigma - profile.ex


def tree_basis_construction(t: Graph, profile: Optional[StructuralProfile] = None) -> Tuple[int, ...]:
    """All terminal vertices of every emv except its lowest-index one."""
    if _require_tree(t, "tree basis construction") == "path":
        raise GraphClassError("tree basis construction needs a tree that is not a path")
    profile = profile or structural_profile(t)
    basis = tuple(sorted(ell for v in profile.emvs for ell in profile.terminals[v][1:]))
    if not is_resolving(t, all_pairs_distances(t), basis):
        raise ConstructionError(f"terminal-vertex basis {basis} does not resolve {t.key}")
    return basis


def dim_equals_Z_tree_predicate(t: Graph, profile: Optional[StructuralProfile] = None) -> bool:
    """No interior degree-2 vertex and ter(v) >= 2 at every major vertex (paths qualify)."""
    if _require_tree(t, "dim = Z predicate") == "path":
        return True
    return not forbidden_vertices(t, profile)


def forbidden_vertices(t: Graph, profile: Optional[StructuralProfile] = None) -> Tuple[int, ...]:
    """Interior degree-2 vertices and major vertices of terminal degree below two."""
    profile = profile or structural_profile(t)
    return tuple(
        v
        for v, cls in enumerate(profile.vertex_class)
        if cls == INTERIOR_DEGREE_2 or (cls in (MAJOR, EMV) and profile.ter(v) < 2)
    )


# ---------------------------------------------------------------------------
# zero forcing on trees


@dataclass(frozen=True)
class TreeZeroForcing:
    z: int
    forcing_set: Tuple[int, ...]
    cover: PathCover
    constructed: bool


def _predicate_cover(profile: StructuralProfile) -> Tuple[PathCover, Tuple[int, ...]]:
    """
    Through each emv run one path joining two of its legs, and keep every other leg as a
    path of its own. The leaf end of every path starts the forcing.
    """
    blocks: List[Tuple[int, ...]] = []
    starts: List[int] = []
    for v in profile.emvs:
        legs = profile.legs[v]
        first, second = legs[0], legs[1]
        blocks.append(first + (v,) + tuple(reversed(second)))
        starts.append(first[0])
        for leg in legs[2:]:
            blocks.append(leg)
            starts.append(leg[0])
    return PathCover(tuple(blocks)), tuple(sorted(starts))


def _endpoint_forcing_set(t: Graph, cover: PathCover) -> Optional[Tuple[int, ...]]:
    choices = [sorted({b[0], b[-1]}) for b in cover.blocks]
    for picked in itertools.product(*choices):
        if is_zero_forcing(t, picked):
            return tuple(sorted(picked))
    return None


def tree_zero_forcing_construction(
    t: Graph,
    profile: Optional[StructuralProfile] = None,
    cap: Optional[int] = None,
) -> TreeZeroForcing:
    kind = _require_tree(t, "tree zero forcing construction")
    if kind == "path":
        end = min(v for v in range(t.n) if t.degree(v) <= 1)
        order = shortest_path(t, all_pairs_distances(t), end, max(v for v in range(t.n) if t.degree(v) <= 1))
        return TreeZeroForcing(1, (end,), PathCover((tuple(order),)), constructed=True)

    profile = profile or structural_profile(t)
    cap = cap if cap is not None else get_settings().caps().path_cover
    predicate = not forbidden_vertices(t, profile)

    if predicate:
        cover, starts = _predicate_cover(profile)
        if not is_zero_forcing(t, starts):
            raise ConstructionError(f"leaf starts {starts} of the constructed cover do not force {t.key}")
        if t.n <= cap:
            p, _ = path_cover_bruteforce(t, cap=cap)
            if p != cover.size:
                raise ConstructionError(f"constructed cover has {cover.size} paths but P={p} on {t.key}")
        return TreeZeroForcing(cover.size, starts, cover, constructed=True)

    if t.n > cap:
        raise CapExceededError(t.n, cap, "tree zero forcing via path cover")
    p, cover = path_cover_bruteforce(t, cap=cap)
    forcing_set = _endpoint_forcing_set(t, cover)
    if forcing_set is None:
        logger.warning("no endpoint choice of the minimum cover forces %s; using the search witness", t.key)
        _, forcing_set = zero_forcing_bruteforce(t)
    return TreeZeroForcing(p, forcing_set, cover, constructed=False)


@dataclass
class AuditReport:
    ok: bool
    omitted_leg: Dict[int, int] = field(default_factory=dict)
    violations: List[str] = field(default_factory=list)


def zfs_structure_audit(
    t: Graph,
    S: Sequence[int],
    profile: Optional[StructuralProfile] = None,
) -> AuditReport:
    """
    For a tree with dim = Z and a minimum zero forcing set S: every emv has exactly one
    leg missed by S, and every member of S sits on a leg (never on the emv itself).
    """
    profile = profile or structural_profile(t)
    if not dim_equals_Z_tree_predicate(t, profile):
        raise PreconditionError(f"{t.key} does not satisfy dim = Z")
    expected = 1 if classify(t).kind == "path" else profile.sigma - profile.ex
    S = tuple(sorted(set(S)))
    if len(S) != expected or not is_zero_forcing(t, S):
        raise PreconditionError(f"{S} is not a minimum zero forcing set of {t.key} (Z={expected})")

    report = AuditReport(ok=True)
    members = set(S)
    on_legs = set()
    for v in profile.emvs:
        missed = [leg for leg in profile.legs[v] if not members & set(leg)]
        on_legs.update(x for leg in profile.legs[v] for x in leg)
        if len(missed) != 1:
            report.violations.append(f"emv {v}: {len(missed)} legs avoid S")
        else:
            report.omitted_leg[v] = missed[0][0]
    if profile.emvs:
        stray = sorted(members - on_legs)
        if stray:
            report.violations.append(f"vertices {stray} of S lie on no leg")
    report.ok = not report.violations
    return report


# ---------------------------------------------------------------------------
# T + e


@dataclass(frozen=True)
class UnicyclicBasis:
    vertices: Tuple[int, ...]
    rule: str  # "path-ends" | "single-subtree" | "diameter-pair" | "offset"
    b0: Optional[int] = None
    anchors: Tuple[int, ...] = ()
    cycle: Tuple[int, ...] = ()


def separates_cycle_subtrees(
    g: Graph,
    dm: DistanceMatrix,
    cycle: Sequence[int],
    anchors: Sequence[int],
) -> bool:
    """Vertices hanging off different cycle vertices get different codes w.r.t. anchors."""
    root = cycle_subtree_roots(g, cycle)
    owner: Dict[Tuple[int, ...], int] = {}
    for v in range(g.n):
        code = tuple(dm[v, a] for a in anchors)
        if code in owner and root[owner[code]] != root[v]:
            return False
        owner.setdefault(code, v)
    return True


def unicyclic_resolving_construction(
    t: Graph,
    e: Tuple[int, int],
    profile: Optional[StructuralProfile] = None,
) -> UnicyclicBasis:
    """
    Resolving set of T + e of size at most dim(T) + 1.

    Paths use their two end-vertices. Otherwise the terminal-vertex basis B is split by
    the cycle vertex rooting each member's subtree, and one cycle vertex b0 is added so
    that three subtrees carry landmarks, two of them rooted at a diametral pair of the cycle.
    """
    kind = _require_tree(t, "unicyclic construction")
    u, v = e
    if u == v or not (0 <= u < t.n and 0 <= v < t.n):
        raise GraphConstructionError(tuple(e), "not a pair of distinct vertices")
    if t.has_edge(u, v):
        raise GraphConstructionError((min(u, v), max(u, v)), "already an edge of the tree")
    g = t.add_edge(u, v)
    dm = all_pairs_distances(g)
    cycle = unique_cycle(g)

    def checked(vertices, rule, b0=None, anchors=()):
        vertices = tuple(sorted(set(vertices)))
        if not is_resolving(g, dm, vertices):
            raise ConstructionError(f"{rule} set {vertices} does not resolve {g.key}")
        return UnicyclicBasis(vertices, rule, b0, tuple(anchors), cycle)

    if kind == "path":
        return checked([x for x in range(t.n) if t.degree(x) == 1], "path-ends")

    basis = tree_basis_construction(t, profile)
    k = len(cycle)
    root = cycle_subtree_roots(g, cycle)
    position = {c: i for i, c in enumerate(cycle)}
    sub: Dict[int, List[int]] = {}
    for b in basis:
        sub.setdefault(position[root[b]], []).append(b)
    occupied = sorted(sub)

    if len(occupied) == 1:
        a = occupied[0]
        neighbours = sorted({cycle[(a + 1) % k], cycle[(a - 1) % k]})
        for c in neighbours + [c for c in cycle if c not in neighbours]:
            if is_resolving(g, dm, tuple(basis) + (c,)):
                if c not in neighbours:
                    logger.warning("cycle neighbours of the occupied subtree fail on %s; using %d", g.key, c)
                return checked(basis + (c,), "single-subtree", b0=c)
        raise ConstructionError(f"no cycle vertex completes {basis} on {g.key}")

    m = k // 2

    def gap(i: int, j: int) -> int:
        return min((j - i) % k, (i - j) % k)

    pairs = [(i, j) for i, j in itertools.combinations(occupied, 2) if gap(i, j) == m]
    if pairs:
        i, j = pairs[0]
        b0 = min(c for c in cycle if c not in (cycle[i], cycle[j]))
        anchors = (sub[i][0], sub[j][0], b0)
        return checked(basis + (b0,), "diameter-pair", b0=b0, anchors=anchors)

    a = occupied[0]
    opposite = (a + m) % k
    b0 = cycle[opposite]
    s = next(p for p in occupied if p not in (a, opposite))
    anchors = (sub[a][0], b0, sub[s][0])
    return checked(basis + (b0,), "offset", b0=b0, anchors=anchors)
