import pytest

from app.core.forcing import is_zero_forcing, path_cover_bruteforce, zero_forcing_bruteforce
from app.core.graph import all_pairs_distances, build_graph
from app.core.resolvability import is_resolving, metric_dimension_bruteforce
from app.core.tree_theory import (
    EMV,
    END_VERTEX,
    EXTERIOR_DEGREE_2,
    INTERIOR_DEGREE_2,
    dim_equals_Z_tree_predicate,
    forbidden_vertices,
    separates_cycle_subtrees,
    structural_profile,
    tree_basis_construction,
    tree_metric_dimension,
    tree_zero_forcing_construction,
    unicyclic_resolving_construction,
    zfs_structure_audit,
)
from app.lab import enumeration, families
from app.utils.errors import GraphClassError, GraphConstructionError, PreconditionError


def test_spider_profile(spider222):
    profile = structural_profile(spider222)
    assert (profile.sigma, profile.ex) == (3, 1)
    assert profile.emvs == (0,)
    assert profile.terminals[0] == (2, 4, 6)
    assert profile.legs[0] == ((2, 1), (4, 3), (6, 5))
    assert profile.vertex_class[0] == EMV
    assert profile.of_class(EXTERIOR_DEGREE_2) == (1, 3, 5)
    assert profile.of_class(END_VERTEX) == (2, 4, 6)


def test_profile_of_graphs_without_leaves(k23):
    profile = structural_profile(families.cycle(5))
    assert (profile.sigma, profile.ex, profile.majors) == (0, 0, ())
    profile = structural_profile(k23)
    assert profile.majors == (0, 1)
    assert profile.emvs == ()


def test_profile_of_a_unicyclic_graph():
    # four-cycle 0-1-2-3 with a pendant path 0-4-5 and a leaf 6 on 2
    g = build_graph(7, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (4, 5), (2, 6)])
    profile = structural_profile(g)
    assert profile.terminals == {0: (5,), 2: (6,)}
    assert (profile.sigma, profile.ex) == (2, 2)
    assert profile.vertex_class[4] == EXTERIOR_DEGREE_2
    assert profile.vertex_class[1] == INTERIOR_DEGREE_2


def test_tree_formula_and_basis(spider222, double_spider):
    assert tree_metric_dimension(families.path(6)) == 1
    assert tree_metric_dimension(spider222) == 2
    assert tree_basis_construction(spider222) == (4, 6)
    assert tree_metric_dimension(families.star(4)) == 3
    assert tree_basis_construction(double_spider) == (6, 8)
    with pytest.raises(GraphClassError):
        tree_basis_construction(families.path(5))
    with pytest.raises(GraphClassError):
        tree_metric_dimension(families.cycle(4))


def test_tree_formula_matches_bruteforce_on_all_trees_up_to_nine():
    for n in range(2, 10):
        for t in enumeration.all_trees(n):
            assert tree_metric_dimension(t) == metric_dimension_bruteforce(t)[0], t.key


def test_double_spider_fails_the_predicate(double_spider):
    profile = structural_profile(double_spider)
    assert profile.of_class(INTERIOR_DEGREE_2) == (1, 2, 3)
    assert forbidden_vertices(double_spider, profile) == (1, 2, 3)
    assert not dim_equals_Z_tree_predicate(double_spider)
    built = tree_zero_forcing_construction(double_spider)
    assert built.z == 3 == zero_forcing_bruteforce(double_spider)[0]
    assert not built.constructed
    assert is_zero_forcing(double_spider, built.forcing_set)


def test_predicate_tree_cover_is_constructed(spider222):
    assert dim_equals_Z_tree_predicate(spider222)
    built = tree_zero_forcing_construction(spider222)
    assert built.constructed
    assert built.z == 2 == path_cover_bruteforce(spider222)[0]
    assert built.forcing_set == (2, 6)
    assert is_zero_forcing(spider222, built.forcing_set)


def test_path_zero_forcing_uses_one_end():
    built = tree_zero_forcing_construction(families.path(5))
    assert (built.z, built.forcing_set, built.cover.blocks) == (1, (0,), ((0, 1, 2, 3, 4),))


def test_characterization_on_trees_up_to_eight():
    for n in range(2, 9):
        for t in enumeration.all_trees(n):
            dim = metric_dimension_bruteforce(t)[0]
            z = zero_forcing_bruteforce(t)[0]
            assert dim <= z
            assert dim_equals_Z_tree_predicate(t) == (dim == z), t.key


def test_audit(spider222, double_spider):
    report = zfs_structure_audit(families.star(3), (1, 2))
    assert report.ok
    assert report.omitted_leg == {0: 3}
    _, witness = zero_forcing_bruteforce(spider222)
    assert zfs_structure_audit(spider222, witness).ok
    with pytest.raises(PreconditionError):
        zfs_structure_audit(double_spider, (5, 6, 7))
    with pytest.raises(PreconditionError):
        zfs_structure_audit(spider222, (0, 1))


def test_path_plus_edge_uses_both_ends():
    built = unicyclic_resolving_construction(families.path(6), (1, 4))
    assert (built.vertices, built.rule) == ((0, 5), "path-ends")


def test_unicyclic_construction_rejects_bad_edges(spider222):
    with pytest.raises(GraphConstructionError):
        unicyclic_resolving_construction(spider222, (0, 1))
    with pytest.raises(GraphConstructionError):
        unicyclic_resolving_construction(spider222, (2, 2))


def test_unicyclic_construction_on_every_small_tree():
    for n in range(4, 9):
        for t, e in enumeration.tree_edge_pairs(n):
            built = unicyclic_resolving_construction(t, e)
            g = t.add_edge(*e)
            dm = all_pairs_distances(g)
            assert is_resolving(g, dm, built.vertices)
            assert len(built.vertices) <= tree_metric_dimension(t) + 1
            if built.anchors:
                assert separates_cycle_subtrees(g, dm, built.cycle, built.anchors)


def test_sharpness_witness(sharp_tree):
    g = sharp_tree.add_edge(3, 5)
    assert tree_metric_dimension(sharp_tree) == 2
    assert metric_dimension_bruteforce(g)[0] == 3
    assert zero_forcing_bruteforce(g)[0] == 2
