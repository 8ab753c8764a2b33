import pytest

from app.core import subsets
from app.core.graph import build_graph
from app.core.resolvability import metric_dimension_bruteforce
from app.lab import families
from app.lab.report import compute_report
from app.utils.errors import CapExceededError, DisconnectedGraphError, GraphClassError


def test_path_report():
    report = compute_report(families.path(5))
    assert (report.dim, report.Z, report.r) == (1, 1, 0)
    assert report.graph_class == "path"
    assert report.dim_witness == [0]
    assert report.predicates["dim_equals_Z_tree"]
    assert all(v.status == "pass" for v in report.verdicts)
    assert report.timing is not None


def test_complete_bipartite_with_path_cover(k23):
    report = compute_report(k23, path_cover=True, timing=False)
    assert (report.dim, report.Z, report.P) == (3, 3, 2)
    assert len(report.twins) == 4
    assert report.predicates["dim_n_minus_2_family"]
    assert "path_cover" in {v.check for v in report.verdicts}
    assert report.timing is None


def test_bouquet_meets_the_cycle_rank_bound():
    report = compute_report(families.c4_bouquet(2))
    assert (report.dim, report.Z, report.r) == (5, 3, 2)
    conjecture = next(v for v in report.verdicts if v.check == "cycle_rank_conjecture")
    assert conjecture.kind == "conjecture" and conjecture.status == "pass"


def test_formula_method_on_the_double_spider(double_spider):
    report = compute_report(double_spider, method="formula")
    assert report.dim_method == "tree-formula"
    assert (report.dim, report.Z, report.dim_formula) == (2, 3, 2)
    assert report.dim_witness == [6, 8]
    assert not report.predicates["dim_equals_Z_tree"]
    assert "tree_formula" not in {v.check for v in report.verdicts}


def test_both_methods_cross_check(spider222):
    report = compute_report(spider222, method="both")
    assert report.dim_method == "both"
    assert report.dim == report.dim_formula == 2
    assert next(v for v in report.verdicts if v.check == "tree_formula").status == "pass"


def test_formula_beyond_the_brute_force_cap():
    report = compute_report(families.spider(6, 6, 6), method="formula", timing=False)
    assert (report.n, report.dim, report.Z) == (19, 2, 2)


def test_errors():
    with pytest.raises(GraphClassError):
        compute_report(families.cycle(5), method="formula")
    with pytest.raises(DisconnectedGraphError):
        compute_report(build_graph(4, [(0, 1), (2, 3)]))
    with pytest.raises(CapExceededError):
        compute_report(families.path(20))


def test_workers_shard_the_searches_without_changing_the_report(monkeypatch):
    g = families.grid(3, 3)
    sequential = compute_report(g, timing=False)
    monkeypatch.setattr(subsets, "_MIN_PARALLEL_CANDIDATES", 0)
    sharded = compute_report(g, timing=False, workers=2)
    assert (sharded.dim, sharded.Z) == (sequential.dim, sequential.Z) == (2, 3)
    assert sharded.dim_witness == sequential.dim_witness
    assert sharded.Z_witness == sequential.Z_witness
    assert metric_dimension_bruteforce(g, workers=2) == metric_dimension_bruteforce(g)
