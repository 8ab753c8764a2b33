from itertools import combinations

import pytest

from app.core.graph import all_pairs_distances, build_graph, cycle_subtree_roots, twins, unique_cycle
from app.core.resolvability import (
    is_resolving,
    metric_code,
    metric_dimension_bruteforce,
    resolution_classes,
    sigma_ex_lower_bound,
    strongly_resolves,
)
from app.core.tree_theory import structural_profile
from app.lab import families
from app.utils.errors import CapExceededError, DisconnectedGraphError, EmptyLandmarkSetError


def test_metric_code_and_empty_landmarks():
    g = families.path(4)
    dm = all_pairs_distances(g)
    assert metric_code(g, dm, 3, [0, 1]).distances == (3, 2)
    with pytest.raises(EmptyLandmarkSetError):
        metric_code(g, dm, 0, [])
    assert not is_resolving(g, dm, [])


def test_is_resolving_reports_the_first_collision():
    g = families.star(3)
    check = is_resolving(g, all_pairs_distances(g), [1])
    assert not check
    assert check.unresolved == (2, 3)


@pytest.mark.parametrize(
    "g, dim, witness",
    [
        (families.path(5), 1, (0,)),
        (families.cycle(6), 2, (0, 1)),
        (families.complete(5), 4, (0, 1, 2, 3)),
    ],
)
def test_bruteforce_values_and_lex_witness(g, dim, witness):
    assert metric_dimension_bruteforce(g) == (dim, witness)


def test_complete_bipartite(k23):
    dim, basis = metric_dimension_bruteforce(k23)
    assert dim == 3
    assert is_resolving(k23, all_pairs_distances(k23), basis)


@pytest.mark.parametrize("order", ["colex", "reverse"])
def test_orders_agree_on_the_value(order):
    g = families.grid(2, 3)
    assert metric_dimension_bruteforce(g, order=order)[0] == metric_dimension_bruteforce(g)[0] == 2


def test_caps_and_connectivity():
    with pytest.raises(CapExceededError, match="--cap"):
        metric_dimension_bruteforce(families.path(5), cap=4)
    with pytest.raises(DisconnectedGraphError):
        metric_dimension_bruteforce(build_graph(4, [(0, 1), (2, 3)]))


def test_strong_resolution():
    c4, c6 = families.cycle(4), families.cycle(6)
    assert not strongly_resolves(c4, all_pairs_distances(c4), [0, 1])
    assert strongly_resolves(c6, all_pairs_distances(c6), [0, 3, 1])


def test_resolution_classes():
    g = families.cycle(4)
    classes = resolution_classes(g, all_pairs_distances(g), [0, 1])
    assert classes.classes == ((0, 3), (1, 2))
    assert not classes.all_singletons
    assert classes.class_of(2) == (1, 2)


def test_sigma_ex_lower_bound(spider222):
    profile = structural_profile(spider222)
    assert sigma_ex_lower_bound(profile) == 2
    assert metric_dimension_bruteforce(spider222)[0] >= sigma_ex_lower_bound(profile)


def test_twins_share_codes_away_from_the_pair(connected_upto_6):
    pairs = 0
    for g in connected_upto_6:
        dm = all_pairs_distances(g)
        for u, v in twins(g):
            others = [x for x in g.vertices if x not in (u, v)]
            for k in range(1, len(others) + 1):
                for S in combinations(others, k):
                    assert metric_code(g, dm, u, S) == metric_code(g, dm, v, S), (g.key, u, v, S)
            pairs += 1
    assert pairs > 0


def test_strong_resolution_implies_resolving(connected_upto_6):
    strong = 0
    for g in connected_upto_6:
        dm = all_pairs_distances(g)
        for k in range(1, g.n + 1):
            for W in combinations(g.vertices, k):
                if strongly_resolves(g, dm, W):
                    strong += 1
                    assert is_resolving(g, dm, W), (g.key, W)
    assert strong > 0


def test_hanging_subtrees_stay_in_their_root_class(unicyclic_upto_7):
    for g in unicyclic_upto_7:
        dm = all_pairs_distances(g)
        root = cycle_subtree_roots(g, unique_cycle(g))
        for k in (1, 2):
            for W in combinations(g.vertices, k):
                classes = resolution_classes(g, dm, W)
                for x, c in root.items():
                    hanging = {y for y, r in root.items() if r == c and y != c}
                    if hanging.isdisjoint(W):
                        assert c in classes.class_of(x), (g.key, W, x)
