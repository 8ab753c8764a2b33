# app/lab/sweeps.py
"""
Sweep engine: run registered checks over a corpus and aggregate a SweepResult.

Provides:
 - run_sweep(items, checks, corpus, ...)
 - family_sweep(spec, checks, ...)
 - t_plus_e_sweep(n_max, ...)
 - cycle_rank_conjecture_check(corpus, ...)
 - divergence_search(corpus, ...)

Graphs are evaluated independently (optionally in a process pool); the aggregate is
sorted canonically, so the report does not depend on worker scheduling.
"""
import logging
import sys
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from tqdm import tqdm

from app.config import Caps, get_settings
from app.core.forcing import zero_forcing_bruteforce
from app.core.graph import Graph, even_cycle_rank, unique_cycle
from app.core.resolvability import metric_dimension_bruteforce
from app.lab.checks import (
    CHECKS,
    CONJECTURE,
    FAIL,
    NOT_APPLICABLE,
    PASS,
    THEOREM,
    Check,
    GraphContext,
    resolve_checks,
    run_check,
)
from app.lab.enumeration import canonical_form
from app.lab.enumeration import dedup as dedup_graphs
from app.lab.families import generate, grid, parse_family, tree_edge_corpus
from app.models.schemas import CheckTally, ExampleRecord, GraphRecord, SweepResult, Violation

logger = logging.getLogger("dimforce.lab.sweeps")

# witnesses kept per example kind; the full count goes to example_counts
EXAMPLE_LIMIT = 5

T_PLUS_E_CHECKS = ("unicyclic_bounds", "dimZ_plus1", "construction", "path_plus_e", "cycle_rank_conjecture")

# expected (sigma drop, largest ex growth) by the number of end-vertices e joins
_LOWER_BOUND_CASES = {2: (2, 0), 1: (1, 1), 0: (0, 2)}


@dataclass(frozen=True)
class SweepItem:
    g: Graph
    tree: Optional[Graph] = None
    edge: Optional[Tuple[int, int]] = None


@dataclass(frozen=True)
class SweepOptions:
    checks: Tuple[str, ...]
    caps: Caps
    even_cycles: bool = False


@dataclass
class ItemOutcome:
    item: SweepItem
    statuses: Dict[str, Tuple[str, Optional[str]]]
    values: Dict[str, int]
    confirmed: bool = True
    tags: List[str] = field(default_factory=list)


def _confirm(g: Graph, caps: Caps, dim: int, z: int) -> bool:
    """Recompute dim and Z under the colex and reverse subset orders."""
    for order in ("colex", "reverse"):
        d, _ = metric_dimension_bruteforce(g, cap=caps.brute_force, order=order)
        zz, _ = zero_forcing_bruteforce(g, cap=caps.brute_force, order=order)
        if (d, zz) != (dim, z):
            logger.error("order %s gives dim=%d Z=%d on %s (lex: %d, %d)", order, d, zz, g.key, dim, z)
            return False
    return True


def _tags(values: Dict[str, int], item: SweepItem) -> List[str]:
    tags = []
    dim, z, r = values["dim"], values["Z"], values["r"]
    if dim < z:
        tags.append("dim_lt_Z")
    if dim > z:
        tags.append("dim_gt_Z")
        if values.get("r_e") == 0:
            tags.append("dim_gt_Z_even_cycle_free")
    if r >= 1 and dim == z + r:
        tags.append("dim_eq_Z_plus_r")
    if item.tree is not None:
        if dim == z + 1:
            tags.append("dim_eq_Z_plus_1")
        if dim == values["tree_dim"] + 1:
            tags.append("dim_eq_tree_dim_plus_1")
        if dim == values["tree_dim"] - 2:
            tags.append("dim_eq_tree_dim_minus_2")
        if values["ex"] > values["tree_ex"]:
            tags.append("ex_increase")
    return tags


def evaluate_item(item: SweepItem, options: SweepOptions) -> ItemOutcome:
    ctx = GraphContext(item.g, options.caps, item.tree, item.edge)
    statuses = {name: run_check(CHECKS[name], ctx) for name in options.checks}
    values = {
        "n": item.g.n,
        "m": item.g.number_of_edges,
        "r": ctx.gclass.r,
        "dim": ctx.dim,
        "Z": ctx.z,
        "sigma": ctx.profile.sigma,
        "ex": ctx.profile.ex,
    }
    if ctx.gclass.kind == "unicyclic":
        values["cycle_length"] = len(unique_cycle(item.g))
    if item.tree is not None:
        values["tree_dim"] = ctx.tree_dim
        values["tree_sigma"] = ctx.tree_profile.sigma
        values["tree_ex"] = ctx.tree_profile.ex
        values["end_vertices_joined"] = sum(1 for v in item.edge if item.tree.degree(v) == 1)
    if options.even_cycles and values["dim"] > values["Z"]:
        r_e = even_cycle_rank(item.g)
        if r_e is not None:
            values["r_e"] = r_e
    confirmed = True
    if any(status == FAIL for status, _ in statuses.values()):
        confirmed = _confirm(item.g, options.caps, ctx.dim, ctx.z)
    logger.debug("%s dim=%d Z=%d", item.g.key, ctx.dim, ctx.z)
    return ItemOutcome(item, statuses, values, confirmed, _tags(values, item))


def _record(item: SweepItem) -> Dict:
    return {
        "graph": GraphRecord.from_graph(item.g),
        "tree": GraphRecord.from_graph(item.tree) if item.tree is not None else None,
        "edge": item.edge,
    }


def _observe(outcome: ItemOutcome, seen: Counter) -> None:
    values = outcome.values
    if values.get("cycle_length", 0) % 2 == 1:
        held = values["dim"] <= values["Z"]
        seen["odd_cycle_dim_le_Z_held" if held else "odd_cycle_dim_le_Z_failed"] += 1
    if "end_vertices_joined" in values:
        case = values["end_vertices_joined"]
        drop, growth = _LOWER_BOUND_CASES[case]
        seen[f"lower_bound_case_{case}"] += 1
        if (
            values["sigma"] == values["tree_sigma"] - drop
            and values["ex"] <= values["tree_ex"] + growth
        ):
            seen[f"lower_bound_case_{case}_shift_held"] += 1
    if "r_e" in values:
        seen[f"r_e_{values['r_e']}"] += 1


def aggregate(corpus: str, checks: Sequence[Check], outcomes: Iterable[ItemOutcome]) -> SweepResult:
    tallies = {c.name: CheckTally(kind=c.kind) for c in checks}
    violations: List[Violation] = []
    examples: Dict[str, List[ExampleRecord]] = {}
    counts: Counter = Counter()
    seen: Counter = Counter()
    extremes: Dict[str, Tuple[int, ItemOutcome]] = {}
    total = 0
    for outcome in outcomes:
        total += 1
        for name, (status, detail) in outcome.statuses.items():
            tally = tallies[name]
            if status == PASS:
                tally.passed += 1
            elif status == NOT_APPLICABLE:
                tally.not_applicable += 1
            else:
                tally.failed += 1
                check = CHECKS[name]
                violations.append(
                    Violation(
                        check=name,
                        kind=check.kind,
                        detail=detail or "",
                        confirmed=outcome.confirmed,
                        **_record(outcome.item),
                    )
                )
                if check.kind == CONJECTURE:
                    logger.warning(
                        "POSSIBLE COUNTEREXAMPLE to %s (%s): %s [%s]",
                        name, check.statement, outcome.item.g.key, detail,
                    )
                else:
                    logger.error("%s violated on %s: %s", name, outcome.item.g.key, detail)
        for tag in outcome.tags:
            counts[tag] += 1
            examples.setdefault(tag, []).append(ExampleRecord(values=outcome.values, **_record(outcome.item)))
        _observe(outcome, seen)
        for key, value in (
            ("max_Z_minus_dim", outcome.values["Z"] - outcome.values["dim"]),
            ("max_dim_minus_Z", outcome.values["dim"] - outcome.values["Z"]),
        ):
            if key not in extremes or value > extremes[key][0]:
                extremes[key] = (value, outcome)

    for key, (value, outcome) in extremes.items():
        seen[key] = value
        examples[key] = [ExampleRecord(values=outcome.values, **_record(outcome.item))]
        counts[key] = 1
    for tag in examples:
        examples[tag] = sorted(examples[tag], key=lambda e: e.graph.sort_key())[:EXAMPLE_LIMIT]
    violations.sort(key=lambda v: (v.check, v.graph.sort_key(), v.edge or ()))
    return SweepResult(
        corpus=corpus,
        checks=[c.name for c in checks],
        graphs_checked=total,
        tallies=tallies,
        violations=violations,
        examples=dict(sorted(examples.items())),
        example_counts=dict(sorted(counts.items())),
        observations=dict(sorted(seen.items())),
    )


def run_sweep(
    items: Iterable[SweepItem],
    checks: Sequence[Check],
    corpus: str,
    caps: Optional[Caps] = None,
    workers: Optional[int] = None,
    progress: bool = False,
    even_cycles: bool = False,
) -> SweepResult:
    settings = get_settings()
    caps = caps or settings.caps()
    workers = workers if workers is not None else settings.WORKERS
    items = list(items)
    options = SweepOptions(tuple(c.name for c in checks), caps, even_cycles)
    logger.info("sweep %s: %d graphs, checks=%s, workers=%d", corpus, len(items), ",".join(options.checks), workers)
    start = time.perf_counter()
    bar = dict(total=len(items), desc=corpus, unit="graph", file=sys.stderr, disable=not progress)
    if workers > 1 and len(items) > 1:
        chunksize = max(1, len(items) // (workers * 8))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = list(tqdm(pool.map(evaluate_item, items, [options] * len(items), chunksize=chunksize), **bar))
    else:
        outcomes = [evaluate_item(item, options) for item in tqdm(items, **bar)]
    result = aggregate(corpus, checks, outcomes)
    result.timing_seconds = round(time.perf_counter() - start, 3)
    logger.info(
        "sweep %s done: %d graphs, %d violations (%d theorem failures) in %.2fs",
        corpus, result.graphs_checked, len(result.violations), result.theorem_failures, result.timing_seconds,
    )
    return result


def family_items(
    spec,
    labeled: bool = False,
    big: bool = False,
    caps: Optional[Caps] = None,
    progress: bool = False,
    dedup: bool = False,
) -> List[SweepItem]:
    """dedup=True keeps the first labeled graph of every isomorphism class (for T + e: of T + e and T)."""
    if isinstance(spec, str):
        spec = parse_family(spec)
    if spec.name == "t_plus_e":
        items = [SweepItem(t.add_edge(*e), t, e) for t, e in tree_edge_corpus(spec, labeled=labeled, caps=caps)]
    else:
        items = [SweepItem(g) for g in generate(spec, labeled=labeled, big=big, caps=caps, progress=progress)]
    if not dedup:
        return items
    if spec.name != "t_plus_e":
        kept = [SweepItem(g) for g in dedup_graphs([item.g for item in items])]
    else:
        first: Dict[Tuple, SweepItem] = {}
        for item in items:
            first.setdefault((canonical_form(item.g), canonical_form(item.tree)), item)
        kept = list(first.values())
    logger.info("dedup %s: %d labeled graphs, %d classes", spec, len(items), len(kept))
    return kept


def family_sweep(
    spec,
    checks=(),
    labeled: bool = False,
    big: bool = False,
    caps: Optional[Caps] = None,
    workers: Optional[int] = None,
    progress: bool = False,
    even_cycles: bool = False,
    dedup: bool = False,
) -> SweepResult:
    if isinstance(spec, str):
        spec = parse_family(spec)
    items = family_items(spec, labeled=labeled, big=big, caps=caps, progress=progress, dedup=dedup)
    corpus = str(spec)
    if labeled:
        corpus += " (labeled, dedup)" if dedup else " (labeled)"
    return run_sweep(items, resolve_checks(checks), corpus, caps, workers, progress, even_cycles)


def t_plus_e_sweep(
    n_max: int,
    n_min: int = 3,
    checks: Sequence[str] = T_PLUS_E_CHECKS,
    caps: Optional[Caps] = None,
    workers: Optional[int] = None,
    progress: bool = False,
) -> SweepResult:
    """Every tree T with n_min <= |V| <= n_max and every edge e of its complement."""
    return family_sweep(f"t_plus_e:{n_min}-{n_max}", checks, caps=caps, workers=workers, progress=progress)


def cycle_rank_conjecture_check(
    corpus: Iterable[Graph],
    name: str = "corpus",
    caps: Optional[Caps] = None,
    workers: Optional[int] = None,
    progress: bool = False,
) -> SweepResult:
    """dim <= Z + r on every graph; equality cases land in examples['dim_eq_Z_plus_r']."""
    items = [SweepItem(g) for g in corpus]
    return run_sweep(items, resolve_checks(["cycle_rank_conjecture"]), name, caps, workers, progress)


def divergence_search(
    corpus: Iterable[Graph],
    name: str = "corpus",
    caps: Optional[Caps] = None,
    workers: Optional[int] = None,
    progress: bool = False,
) -> SweepResult:
    """
    Largest Z - dim and dim - Z with witnesses. Graphs with dim > Z also get their even
    cycle rank; even-cycle-free ones are listed under 'dim_gt_Z_even_cycle_free'.

    Independently of the corpus, the grids of GRID_DIVERGENCE are checked against their
    known (dim, Z) and tallied as the theorem check 'grid_divergence'.
    """
    caps = caps or get_settings().caps()
    items = [SweepItem(g) for g in corpus]
    result = run_sweep(items, [], name, caps, workers, progress, even_cycles=True)
    _check_grids(result, caps)
    return result


# (m, n, dim, Z) of P_m x P_n
GRID_DIVERGENCE = ((3, 3, 2, 3), (4, 4, 2, 4))


def _check_grids(result: SweepResult, caps: Caps) -> None:
    tally = CheckTally(kind=THEOREM)
    for m, n, want_dim, want_z in GRID_DIVERGENCE:
        g = grid(m, n)
        if g.n > caps.brute_force:
            logger.info("grid(%d,%d) skipped: n=%d above the brute-force cap %d", m, n, g.n, caps.brute_force)
            tally.not_applicable += 1
            continue
        dim, _ = metric_dimension_bruteforce(g, cap=caps.brute_force)
        z, _ = zero_forcing_bruteforce(g, cap=caps.brute_force)
        if (dim, z) == (want_dim, want_z):
            tally.passed += 1
            continue
        tally.failed += 1
        detail = f"grid({m},{n}): dim={dim}, Z={z}; expected dim={want_dim}, Z={want_z}"
        logger.error("grid_divergence violated: %s", detail)
        result.violations.append(
            Violation(check="grid_divergence", kind=THEOREM, graph=GraphRecord.from_graph(g), detail=detail)
        )
    result.tallies["grid_divergence"] = tally
    result.checks.append("grid_divergence")
