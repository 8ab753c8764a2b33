import pytest

from app.config import Caps
from app.lab import enumeration, families
from app.utils.errors import CapExceededError, FamilySpecError


@pytest.mark.parametrize("n, count", [(2, 1), (5, 3), (6, 6), (8, 23), (10, 106)])
def test_tree_counts(n, count):
    trees = list(enumeration.all_trees(n))
    assert len(trees) == count
    assert all(t.n == n and t.number_of_edges == n - 1 and t.is_connected for t in trees)


@pytest.mark.parametrize("n, count", [(1, 1), (3, 2), (4, 6), (5, 21), (6, 112)])
def test_connected_counts(n, count):
    assert len(enumeration.all_connected(n)) == count


def test_enumeration_caps():
    caps = Caps(enumeration=5)
    with pytest.raises(CapExceededError, match="--big"):
        enumeration.all_connected(6, caps=caps)
    with pytest.raises(CapExceededError):
        list(enumeration.labeled_trees(9))
    with pytest.raises(FamilySpecError):
        list(enumeration.all_trees(1))


def test_tree_and_t_plus_e_caps():
    with pytest.raises(CapExceededError, match="tree enumeration"):
        list(enumeration.all_trees(17))
    with pytest.raises(CapExceededError, match="T \\+ e enumeration"):
        list(enumeration.tree_edge_pairs(11))
    caps = Caps(trees=5, t_plus_e=4)
    assert len(list(enumeration.all_trees(5, caps=caps))) == 3
    with pytest.raises(CapExceededError, match="cap is 5"):
        list(enumeration.all_trees(6, caps=caps))
    with pytest.raises(CapExceededError, match="cap is 4"):
        list(families.tree_edge_corpus("t_plus_e:3-5", caps=caps))


def test_labeled_trees_dedup_to_isomorphism_classes():
    labeled = list(enumeration.labeled_trees(5))
    assert len(labeled) == 125
    assert len(enumeration.dedup(labeled)) == 3
    assert len(enumeration.isomorphism_classes(labeled)) == 3


def test_labeled_connected_count():
    assert len(list(enumeration.labeled_connected(4))) == 38


def test_canonical_form_is_label_independent():
    a = families.spider(1, 2)
    b = families.path(4)
    assert enumeration.canonical_form(a) == enumeration.canonical_form(b)
    assert enumeration.canonical_form(families.star(3)) != enumeration.canonical_form(b)


def test_tree_edge_pairs():
    pairs = list(enumeration.tree_edge_pairs(4))
    assert len(pairs) == 6
    assert all(not t.has_edge(*e) for t, e in pairs)
