# app/core/resolvability.py
"""
Metric codes and resolving sets.

Provides:
 - metric_code(g, dm, v, W) -> MetricCode
 - is_resolving(g, dm, W) -> ResolvingCheck (bool + unresolved pair)
 - strongly_resolves(g, dm, W) -> bool
 - resolution_classes(g, dm, W) -> ResolutionClasses
 - metric_dimension_bruteforce(g, ...) -> (dim, basis)
 - sigma_ex_lower_bound(profile) -> int

Codes are exact integer tuples. Witnesses follow the size-then-lex subset order.
"""
import logging
from dataclasses import dataclass
from functools import partial
from typing import Dict, List, Optional, Sequence, Tuple

from app.config import get_settings
from app.core.graph import DistanceMatrix, Graph, all_pairs_distances, require_parameter_graph
from app.core.subsets import minimum_satisfying
from app.utils.errors import CapExceededError, EmptyLandmarkSetError

logger = logging.getLogger("dimforce.core.resolvability")


@dataclass(frozen=True)
class MetricCode:
    landmarks: Tuple[int, ...]
    distances: Tuple[int, ...]


@dataclass(frozen=True)
class ResolvingCheck:
    resolving: bool
    unresolved: Optional[Tuple[int, int]] = None

    def __bool__(self) -> bool:
        return self.resolving


@dataclass(frozen=True)
class ResolutionClasses:
    landmarks: Tuple[int, ...]
    classes: Tuple[Tuple[int, ...], ...]

    @property
    def all_singletons(self) -> bool:
        return all(len(c) == 1 for c in self.classes)

    def class_of(self, v: int) -> Tuple[int, ...]:
        return next(c for c in self.classes if v in c)


def metric_code(g: Graph, dm: DistanceMatrix, v: int, W: Sequence[int]) -> MetricCode:
    if not W:
        raise EmptyLandmarkSetError()
    W = tuple(W)
    return MetricCode(landmarks=W, distances=tuple(dm[v, w] for w in W))


def _codes(dm: DistanceMatrix, W: Sequence[int]) -> List[Tuple[int, ...]]:
    return list(zip(*(dm.columns[w] for w in W)))


def is_resolving(g: Graph, dm: DistanceMatrix, W: Sequence[int]) -> ResolvingCheck:
    if g.n <= 1:
        return ResolvingCheck(True)
    if not W:
        # the empty set resolves nothing once there are two vertices
        return ResolvingCheck(False, (0, 1))
    seen: Dict[Tuple[int, ...], int] = {}
    for v, code in enumerate(_codes(dm, W)):
        if code in seen:
            return ResolvingCheck(False, (seen[code], v))
        seen[code] = v
    return ResolvingCheck(True)


def _normalized(code: Tuple[int, ...]) -> Tuple[int, ...]:
    # codes differing by a constant vector normalise to the same key
    base = code[0]
    return tuple(x - base for x in code)


def strongly_resolves(g: Graph, dm: DistanceMatrix, W: Sequence[int]) -> bool:
    if not W:
        return g.n <= 1
    keys = {_normalized(code) for code in _codes(dm, W)}
    return len(keys) == g.n


def resolution_classes(g: Graph, dm: DistanceMatrix, W: Sequence[int]) -> ResolutionClasses:
    """Partition of V under u ~_W v <=> code(u) - code(v) is a constant vector."""
    if not W:
        raise EmptyLandmarkSetError()
    buckets: Dict[Tuple[int, ...], List[int]] = {}
    for v, code in enumerate(_codes(dm, W)):
        buckets.setdefault(_normalized(code), []).append(v)
    classes = sorted(tuple(b) for b in buckets.values())
    return ResolutionClasses(landmarks=tuple(W), classes=tuple(classes))


def _resolves_all(columns: Tuple[Tuple[int, ...], ...], n: int, W: Tuple[int, ...]) -> bool:
    return len(set(zip(*(columns[w] for w in W)))) == n


def metric_dimension_bruteforce(
    g: Graph,
    dm: Optional[DistanceMatrix] = None,
    cap: Optional[int] = None,
    order: str = "lex",
    workers: int = 1,
) -> Tuple[int, Tuple[int, ...]]:
    """Exact dim(G) with the first basis in size-then-`order` enumeration."""
    require_parameter_graph(g, "metric dimension")
    cap = cap if cap is not None else get_settings().caps().brute_force
    if g.n > cap:
        raise CapExceededError(g.n, cap, "brute-force metric dimension")
    dm = dm if dm is not None else all_pairs_distances(g)
    predicate = partial(_resolves_all, dm.columns, g.n)
    basis = minimum_satisfying(g.n, predicate, start=1, order=order, workers=workers)
    # V itself always resolves, so the search cannot come back empty
    assert basis is not None
    logger.debug("dim=%d basis=%s (n=%d, order=%s)", len(basis), basis, g.n, order)
    return len(basis), basis


def sigma_ex_lower_bound(profile) -> int:
    """sigma(G) - ex(G); never exceeds dim(G)."""
    return profile.sigma - profile.ex
