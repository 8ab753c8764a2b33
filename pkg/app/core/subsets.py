# app/core/subsets.py
"""
Bitset helpers and the ordered subset search shared by every brute-force oracle.

Vertex sets are Python ints used as bitsets (bit i <=> vertex i). Searches walk
subsets in size-ascending order; inside one size the order is one of:

 - "lex":     itertools.combinations order (the canonical witness order)
 - "colex":   co-lexicographic order (compare the largest element first)
 - "reverse": lexicographic order over reversed vertex labels

Only "lex" defines witnesses. The other two exist so that a suspicious result can
be recomputed by an independent walk over the same subset space.
"""
import itertools
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, Iterator, List, Optional, Sequence, Tuple

ORDERS = ("lex", "colex", "reverse")

# below this many candidates a process pool costs more than it saves
_MIN_PARALLEL_CANDIDATES = 2048


def mask_of(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def vertices_of(mask: int) -> Tuple[int, ...]:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return tuple(out)


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def lowest_bit(mask: int) -> int:
    """Index of the lowest set bit; -1 for the empty set."""
    return (mask & -mask).bit_length() - 1


def subsets_of_size(n: int, k: int, order: str = "lex") -> Iterator[Tuple[int, ...]]:
    if order == "lex":
        yield from itertools.combinations(range(n), k)
    elif order == "colex":
        yield from sorted(itertools.combinations(range(n), k), key=lambda c: c[::-1])
    elif order == "reverse":
        for combo in itertools.combinations(range(n - 1, -1, -1), k):
            yield tuple(sorted(combo))
    else:
        raise ValueError(f"unknown subset order {order!r}; expected one of {ORDERS}")


def _first_hit(predicate: Callable[[Tuple[int, ...]], bool], chunk: Sequence[Tuple[int, ...]]) -> int:
    for idx, candidate in enumerate(chunk):
        if predicate(candidate):
            return idx
    return -1


def first_satisfying(
    predicate: Callable[[Tuple[int, ...]], bool],
    candidates: List[Tuple[int, ...]],
    workers: int = 1,
) -> Optional[Tuple[int, ...]]:
    """
    Return the first candidate (in list order) satisfying `predicate`.

    With workers > 1 the list is sharded across a process pool; every shard reports its
    own first hit and the earliest one wins, so the answer equals the sequential one.
    `predicate` must be picklable (module-level function or functools.partial of one).
    """
    if workers <= 1 or len(candidates) < _MIN_PARALLEL_CANDIDATES:
        idx = _first_hit(predicate, candidates)
        return candidates[idx] if idx >= 0 else None

    size = -(-len(candidates) // workers)
    chunks = [candidates[i : i + size] for i in range(0, len(candidates), size)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        hits = list(pool.map(_first_hit, itertools.repeat(predicate), chunks))
    for chunk, idx in zip(chunks, hits):
        if idx >= 0:
            return chunk[idx]
    return None


def minimum_satisfying(
    n: int,
    predicate: Callable[[Tuple[int, ...]], bool],
    start: int = 1,
    order: str = "lex",
    workers: int = 1,
) -> Optional[Tuple[int, ...]]:
    """Smallest subset of range(n) satisfying `predicate`, first in `order` within its size."""
    for k in range(max(start, 0), n + 1):
        hit = first_satisfying(predicate, list(subsets_of_size(n, k, order)), workers)
        if hit is not None:
            return hit
    return None
