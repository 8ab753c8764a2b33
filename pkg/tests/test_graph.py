import pytest

from app.core.graph import (
    all_pairs_distances,
    build_graph,
    classify,
    complement_edges,
    cycle_subtree_roots,
    even_cycle_rank,
    from_graph6,
    has_even_cycle,
    require_parameter_graph,
    shortest_path,
    to_graph6,
    twins,
    unique_cycle,
)
from app.lab import families
from app.utils.errors import DisconnectedGraphError, GraphClassError, GraphConstructionError, GraphOrderError


def test_build_graph_normalises_edges():
    g = build_graph(3, [(1, 0), (2, 1), (0, 1)])
    assert g.edges == ((0, 1), (1, 2))
    assert g.degrees == (1, 2, 1)
    assert g.has_edge(1, 0)
    assert g.is_connected


@pytest.mark.parametrize("edges, needle", [([(1, 1)], "self-loop"), ([(0, 3)], "out of range")])
def test_build_graph_rejects_bad_pairs(edges, needle):
    with pytest.raises(GraphConstructionError, match=needle):
        build_graph(3, edges)


def test_distances_and_diameter():
    dm = all_pairs_distances(families.path(4))
    assert dm[0, 3] == 3
    assert dm.diameter == 3
    disconnected = all_pairs_distances(build_graph(3, [(0, 1)]))
    assert not disconnected.reachable(0, 2)
    with pytest.raises(DisconnectedGraphError):
        disconnected.diameter


def test_parameter_guard():
    with pytest.raises(GraphOrderError):
        require_parameter_graph(build_graph(1, []))
    with pytest.raises(DisconnectedGraphError):
        require_parameter_graph(build_graph(4, [(0, 1), (2, 3)]))


def test_classify():
    assert classify(families.path(5)).kind == "path"
    assert classify(families.star(3)).kind == "tree"
    assert (classify(families.cycle(5)).kind, classify(families.cycle(5)).r) == ("unicyclic", 1)
    assert (classify(families.complete(4)).kind, classify(families.complete(4)).r) == ("cyclic", 3)


def test_unique_cycle_and_subtree_roots():
    g = build_graph(5, [(0, 1), (1, 2), (2, 3), (3, 0), (2, 4)])
    cycle = unique_cycle(g)
    assert cycle == (0, 1, 2, 3)
    assert cycle_subtree_roots(g, cycle)[4] == 2
    with pytest.raises(GraphClassError):
        unique_cycle(families.path(4))


def test_twins_of_complete_bipartite(k23):
    assert twins(k23) == [(0, 1), (2, 3), (2, 4), (3, 4)]


def test_complement_edges():
    assert complement_edges(families.path(3)) == [(0, 2)]


def test_shortest_path_prefers_low_neighbours():
    g = families.cycle(6)
    assert shortest_path(g, all_pairs_distances(g), 0, 3) == [0, 1, 2, 3]


def test_graph6_round_trip(k23):
    assert from_graph6(to_graph6(k23)) == k23


def test_even_cycles():
    assert has_even_cycle(families.cycle(4))
    assert not has_even_cycle(families.cycle(5))
    assert even_cycle_rank(families.cycle(5)) == 0
    assert even_cycle_rank(families.c4_bouquet(2)) == 2
    assert even_cycle_rank(families.complete(6), max_edges=10) is None


def test_remove_vertex_relabels():
    g = families.path(4).remove_vertex(0)
    assert g == families.path(3)
    with pytest.raises(GraphConstructionError):
        families.path(4).remove_edge(0, 2)


def test_removing_any_cycle_edge_leaves_a_tree(unicyclic_upto_7):
    for g in unicyclic_upto_7:
        cycle = unique_cycle(g)
        for u, v in zip(cycle, cycle[1:] + cycle[:1]):
            assert classify(g.remove_edge(u, v)).is_tree, (g.key, u, v)
