import random

import pytest

from app.core import forcing, subsets
from app.core.forcing import (
    check_Z_perturbation,
    forcing_chains,
    forcing_closure,
    forcing_closure_random_order,
    is_induced_path,
    is_path_cover,
    is_zero_forcing,
    min_degree_bound,
    one_step_forcing,
    one_step_resolving_check,
    path_cover_bruteforce,
    zero_forcing_bruteforce,
)
from app.lab import families
from app.utils.errors import CapExceededError, ConstructionError

SHARDED_GRAPHS = {"grid_3x3": families.grid(3, 3), "spider_222": families.spider(2, 2, 2)}


def test_zero_forcing_sets_on_paths_and_cycles():
    assert is_zero_forcing(families.path(5), [0])
    assert not is_zero_forcing(families.path(5), [2])
    assert is_zero_forcing(families.cycle(6), [0, 1])
    # antipodal vertices each keep two white neighbours
    assert not is_zero_forcing(families.cycle(6), [0, 3])


def test_closure_trace_rounds():
    trace = forcing_closure(families.path(4), [0])
    assert [(e.forcer, e.forced, e.round) for e in trace.events] == [(0, 1, 1), (1, 2, 2), (2, 3, 3)]
    assert trace.rounds == 3
    assert trace.final == (0, 1, 2, 3)
    assert forcing_chains(trace) == [(0, 1, 2, 3)]


def test_random_order_reaches_the_same_closure():
    g = families.grid(3, 3)
    rng = random.Random(7)
    expected = forcing_closure(g, [0, 1, 2]).final
    for _ in range(20):
        assert forcing_closure_random_order(g, [0, 1, 2], rng) == expected


@pytest.mark.parametrize(
    "g, z",
    [
        (families.path(5), 1),
        (families.cycle(6), 2),
        (families.complete(5), 4),
        (families.complete_bipartite(2, 3), 3),
        (families.grid(3, 3), 3),
    ],
)
def test_zero_forcing_number(g, z):
    value, witness = zero_forcing_bruteforce(g)
    assert value == z
    assert is_zero_forcing(g, witness)
    assert value >= min_degree_bound(g)


def test_chains_partition_into_induced_paths(k23):
    _, witness = zero_forcing_bruteforce(k23)
    chains = forcing_chains(forcing_closure(k23, witness))
    assert len(chains) == len(witness)
    assert is_path_cover(k23, chains)


def test_one_step():
    star = families.star(3)
    assert one_step_forcing(star, [0, 1, 2])
    assert one_step_resolving_check(star, [0, 1, 2])
    assert not one_step_forcing(families.path(4), [0])


def test_one_step_set_that_does_not_resolve_raises(monkeypatch):
    star = families.star(3)
    monkeypatch.setattr(forcing, "is_resolving", lambda g, dm, S: False)
    with pytest.raises(ConstructionError, match="does not resolve"):
        one_step_resolving_check(star, [0, 1, 2])
    # sets that do not force in one step never reach the resolvability test
    assert not one_step_resolving_check(families.path(4), [0])


def test_sharded_search_matches_sequential(monkeypatch):
    expected = {name: zero_forcing_bruteforce(g) for name, g in SHARDED_GRAPHS.items()}
    monkeypatch.setattr(subsets, "_MIN_PARALLEL_CANDIDATES", 0)
    for name, g in SHARDED_GRAPHS.items():
        assert zero_forcing_bruteforce(g, workers=2) == expected[name], name


def test_path_cover(spider222):
    p, cover = path_cover_bruteforce(spider222)
    assert p == 2 == zero_forcing_bruteforce(spider222)[0]
    assert is_path_cover(spider222, cover.blocks)
    assert not is_induced_path(families.cycle(4), [0, 1, 2, 3])
    with pytest.raises(CapExceededError):
        path_cover_bruteforce(families.path(6), cap=5)


def test_perturbation_bounds_hold_on_small_graphs():
    for g in (families.cycle(5), families.complete_bipartite(2, 3), families.spider(1, 2, 2)):
        report = check_Z_perturbation(g)
        assert report.ok, report.violations
