# app/lab/checks.py
"""
Registry of per-graph checks.

Each check instantiates one inequality or equality on a single graph (or on a tree T
together with T + e) and returns "pass", "fail" or "not_applicable" with a short detail.
Checks of kind "theorem" decide the exit status of a sweep; checks of kind "conjecture"
only report.
"""
import itertools
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Dict, Iterable, List, Optional, Tuple

from app.config import Caps, get_settings
from app.core.forcing import (
    check_Z_perturbation,
    forcing_chains,
    forcing_closure,
    is_path_cover,
    one_step_forcing,
    path_cover_bruteforce,
    zero_forcing_bruteforce,
)
from app.core.graph import Graph, all_pairs_distances, classify
from app.core.resolvability import is_resolving, metric_dimension_bruteforce, sigma_ex_lower_bound
from app.core.tree_theory import (
    dim_equals_Z_tree_predicate,
    separates_cycle_subtrees,
    structural_profile,
    tree_basis_construction,
    tree_metric_dimension,
    tree_zero_forcing_construction,
    unicyclic_resolving_construction,
    zfs_structure_audit,
)
from app.lab.families import is_dim_n_minus_2_family
from app.utils.errors import ConstructionError, UnknownCheckError

logger = logging.getLogger("dimforce.lab.checks")

THEOREM = "theorem"
CONJECTURE = "conjecture"

PASS = "pass"
FAIL = "fail"
NOT_APPLICABLE = "not_applicable"

# exhaustive per-graph subset and deletion checks stay below these orders
ONE_STEP_MAX_ORDER = 8
PERTURBATION_MAX_ORDER = 8

Outcome = Tuple[str, Optional[str]]


class GraphContext:
    """Lazily computed parameters of one graph, shared by every check run on it."""

    def __init__(
        self,
        g: Graph,
        caps: Optional[Caps] = None,
        tree: Optional[Graph] = None,
        edge: Optional[Tuple[int, int]] = None,
        order: str = "lex",
        known: Optional[Dict[str, object]] = None,
    ):
        self.g = g
        self.caps = caps or get_settings().caps()
        self.tree = tree
        self.edge = edge
        self.order = order
        # precomputed "dm", "dim_result" or "z_result" (value, witness) skip their computation
        for name, value in (known or {}).items():
            if name not in ("dm", "dim_result", "z_result"):
                raise ValueError(f"cannot seed {name!r}")
            self.__dict__[name] = value

    @cached_property
    def dm(self):
        return all_pairs_distances(self.g)

    @cached_property
    def gclass(self):
        return classify(self.g)

    @property
    def is_tree(self) -> bool:
        return self.gclass.kind in ("path", "tree")

    @cached_property
    def profile(self):
        return structural_profile(self.g, self.dm)

    @cached_property
    def dim_result(self) -> Tuple[int, Tuple[int, ...]]:
        return metric_dimension_bruteforce(self.g, self.dm, cap=self.caps.brute_force, order=self.order)

    @property
    def dim(self) -> int:
        return self.dim_result[0]

    @cached_property
    def z_result(self) -> Tuple[int, Tuple[int, ...]]:
        return zero_forcing_bruteforce(self.g, cap=self.caps.brute_force, order=self.order)

    @property
    def z(self) -> int:
        return self.z_result[0]

    @cached_property
    def p_result(self):
        if self.g.n > self.caps.path_cover:
            return None
        return path_cover_bruteforce(self.g, cap=self.caps.path_cover)

    @cached_property
    def tree_profile(self):
        return structural_profile(self.tree)

    @cached_property
    def tree_dim(self) -> int:
        return tree_metric_dimension(self.tree, self.tree_profile)


@dataclass(frozen=True)
class Check:
    name: str
    kind: str
    statement: str
    evaluate: Callable[[GraphContext], Outcome]


CHECKS: Dict[str, Check] = {}


def register(name: str, kind: str, statement: str):
    def wrap(fn: Callable[[GraphContext], Outcome]):
        CHECKS[name] = Check(name, kind, statement, fn)
        return fn

    return wrap


def resolve_checks(names) -> List[Check]:
    """Accepts a comma-separated string or an iterable of names; empty means every check."""
    if isinstance(names, str):
        names = [x.strip() for x in names.split(",") if x.strip()]
    names = list(names or [])
    if not names:
        return list(CHECKS.values())
    out = []
    for name in names:
        if name not in CHECKS:
            raise UnknownCheckError(name, CHECKS)
        out.append(CHECKS[name])
    return out


def run_check(check: Check, ctx: GraphContext) -> Outcome:
    try:
        return check.evaluate(ctx)
    except ConstructionError as exc:
        return FAIL, str(exc)


def _verdict(ok: bool, detail: str) -> Outcome:
    return (PASS, None) if ok else (FAIL, detail)


# ---------------------------------------------------------------------------
# every connected graph


@register("extremal", THEOREM, "dim=1 <=> path, dim=n-1 <=> complete, Z likewise; dim=n-2 <=> the three families")
def _extremal(ctx: GraphContext) -> Outcome:
    g, dim, z = ctx.g, ctx.dim, ctx.z
    n = g.n
    is_path = ctx.gclass.kind == "path"
    is_complete = g.number_of_edges == n * (n - 1) // 2
    problems = []
    if (dim == 1) != is_path:
        problems.append(f"dim={dim} but path={is_path}")
    if (dim == n - 1) != is_complete:
        problems.append(f"dim={dim} but complete={is_complete}")
    if (z == 1) != is_path:
        problems.append(f"Z={z} but path={is_path}")
    if (z == n - 1) != is_complete:
        problems.append(f"Z={z} but complete={is_complete}")
    if n >= 4:
        member = is_dim_n_minus_2_family(g)
        if (dim == n - 2) != member:
            problems.append(f"dim={dim}=n-2 is {dim == n - 2} but family membership is {member}")
    return _verdict(not problems, "; ".join(problems))


@register("min_degree", THEOREM, "Z(G) >= delta(G)")
def _min_degree(ctx: GraphContext) -> Outcome:
    return _verdict(ctx.z >= ctx.g.min_degree, f"Z={ctx.z} < delta={ctx.g.min_degree}")


@register("one_step", THEOREM, "a set forcing V in one round resolves G")
def _one_step(ctx: GraphContext) -> Outcome:
    g = ctx.g
    if g.n > ONE_STEP_MAX_ORDER:
        return NOT_APPLICABLE, f"n > {ONE_STEP_MAX_ORDER}"
    for k in range(1, g.n + 1):
        for S in itertools.combinations(range(g.n), k):
            if one_step_forcing(g, S) and not is_resolving(g, ctx.dm, S):
                return FAIL, f"S={list(S)} forces in one step but does not resolve"
    return PASS, None


@register("sigma_ex", THEOREM, "dim(G) >= sigma(G) - ex(G)")
def _sigma_ex(ctx: GraphContext) -> Outcome:
    bound = sigma_ex_lower_bound(ctx.profile)
    return _verdict(ctx.dim >= bound, f"dim={ctx.dim} < sigma-ex={bound}")


@register("path_cover", THEOREM, "P(G) <= Z(G), equality on trees, forcing chains are induced paths")
def _path_cover(ctx: GraphContext) -> Outcome:
    if ctx.p_result is None:
        return NOT_APPLICABLE, f"n > path cover cap {ctx.caps.path_cover}"
    p, _ = ctx.p_result
    chains = forcing_chains(forcing_closure(ctx.g, ctx.z_result[1]))
    if not is_path_cover(ctx.g, chains):
        return FAIL, f"forcing chains {chains} are not an induced path cover"
    if p > ctx.z:
        return FAIL, f"P={p} > Z={ctx.z}"
    if ctx.is_tree and p != ctx.z:
        return FAIL, f"tree with P={p} != Z={ctx.z}"
    return PASS, None


@register("cycle_rank_conjecture", CONJECTURE, "dim(G) <= Z(G) + r(G)")
def _cycle_rank(ctx: GraphContext) -> Outcome:
    r = ctx.gclass.r
    return _verdict(ctx.dim <= ctx.z + r, f"dim={ctx.dim} > Z+r={ctx.z}+{r}")


@register("Z_perturbation", THEOREM, "Z(G)-1 <= Z(G-v), Z(G-e) <= Z(G)+1")
def _perturbation(ctx: GraphContext) -> Outcome:
    if ctx.g.n > PERTURBATION_MAX_ORDER:
        return NOT_APPLICABLE, f"n > {PERTURBATION_MAX_ORDER}"
    report = check_Z_perturbation(ctx.g, cap=ctx.caps.brute_force)
    return _verdict(report.ok, "; ".join(report.violations))


# ---------------------------------------------------------------------------
# trees


@register("tree_formula", THEOREM, "dim(T) = sigma(T) - ex(T) (1 for paths)")
def _tree_formula(ctx: GraphContext) -> Outcome:
    if not ctx.is_tree:
        return NOT_APPLICABLE, None
    formula = tree_metric_dimension(ctx.g, ctx.profile)
    return _verdict(formula == ctx.dim, f"formula {formula} != brute force {ctx.dim}")


@register("dim_le_Z", THEOREM, "dim(T) <= Z(T)")
def _dim_le_z(ctx: GraphContext) -> Outcome:
    if not ctx.is_tree:
        return NOT_APPLICABLE, None
    return _verdict(ctx.dim <= ctx.z, f"dim={ctx.dim} > Z={ctx.z}")


@register("dimZ_characterization", THEOREM, "dim(T) = Z(T) <=> no interior degree-2 vertex and ter(v) >= 2")
def _characterization(ctx: GraphContext) -> Outcome:
    if not ctx.is_tree:
        return NOT_APPLICABLE, None
    predicate = dim_equals_Z_tree_predicate(ctx.g, ctx.profile)
    if predicate != (ctx.dim == ctx.z):
        return FAIL, f"predicate={predicate} but dim={ctx.dim}, Z={ctx.z}"
    if predicate and ctx.gclass.kind == "tree":
        built = tree_zero_forcing_construction(ctx.g, ctx.profile, cap=ctx.caps.path_cover)
        if built.z != ctx.z:
            return FAIL, f"constructed cover has {built.z} paths, Z={ctx.z}"
        for S in (built.forcing_set, ctx.z_result[1]):
            audit = zfs_structure_audit(ctx.g, S, ctx.profile)
            if not audit.ok:
                return FAIL, f"audit of S={list(S)}: {'; '.join(audit.violations)}"
    return PASS, None


# ---------------------------------------------------------------------------
# unicyclic graphs and T + e


@register("unicyclic_bounds", THEOREM, "dim(T)-2 <= dim(T+e) <= dim(T)+1")
def _unicyclic_bounds(ctx: GraphContext) -> Outcome:
    if ctx.tree is None:
        return NOT_APPLICABLE, None
    lo, hi = ctx.tree_dim - 2, ctx.tree_dim + 1
    return _verdict(lo <= ctx.dim <= hi, f"dim(T+e)={ctx.dim} outside [{lo}, {hi}]")


@register("dimZ_plus1", THEOREM, "dim(G) <= Z(G) + 1 for unicyclic G")
def _dim_z_plus_1(ctx: GraphContext) -> Outcome:
    if ctx.gclass.kind != "unicyclic":
        return NOT_APPLICABLE, None
    return _verdict(ctx.dim <= ctx.z + 1, f"dim={ctx.dim} > Z+1={ctx.z + 1}")


@register("path_plus_e", THEOREM, "dim(P_n + e) = Z(P_n + e) = 2")
def _path_plus_e(ctx: GraphContext) -> Outcome:
    if ctx.tree is None or classify(ctx.tree).kind != "path":
        return NOT_APPLICABLE, None
    return _verdict(ctx.dim == 2 and ctx.z == 2, f"dim={ctx.dim}, Z={ctx.z}")


@register("construction", THEOREM, "constructed resolving sets resolve with size sigma-ex (trees) or <= dim(T)+1 (T+e)")
def _construction(ctx: GraphContext) -> Outcome:
    if ctx.tree is not None:
        built = unicyclic_resolving_construction(ctx.tree, ctx.edge, ctx.tree_profile)
        if len(built.vertices) > ctx.tree_dim + 1:
            return FAIL, f"{built.rule} set {list(built.vertices)} exceeds dim(T)+1={ctx.tree_dim + 1}"
        if built.anchors and not separates_cycle_subtrees(ctx.g, ctx.dm, built.cycle, built.anchors):
            return FAIL, f"anchors {list(built.anchors)} do not separate the cycle subtrees"
        return PASS, None
    if ctx.gclass.kind == "tree":
        basis = tree_basis_construction(ctx.g, ctx.profile)
        expected = ctx.profile.sigma - ctx.profile.ex
        return _verdict(len(basis) == expected, f"basis {list(basis)} has size != {expected}")
    return NOT_APPLICABLE, None


def checks_help() -> List[Dict[str, str]]:
    return [{"name": c.name, "kind": c.kind, "statement": c.statement} for c in CHECKS.values()]


def check_names(kind: Optional[str] = None) -> Iterable[str]:
    return [c.name for c in CHECKS.values() if kind is None or c.kind == kind]
