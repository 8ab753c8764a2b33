import pytest

from app.config import Caps
from app.core.graph import build_graph
from app.lab import families, sweeps
from app.lab.checks import CHECKS, GraphContext, check_names, resolve_checks, run_check
from app.lab.enumeration import canonical_form
from app.lab.sweeps import (
    T_PLUS_E_CHECKS,
    SweepItem,
    SweepOptions,
    cycle_rank_conjecture_check,
    divergence_search,
    evaluate_item,
    family_items,
    family_sweep,
    t_plus_e_sweep,
)
from app.utils.errors import UnknownCheckError


def test_resolve_checks():
    assert [c.name for c in resolve_checks("dim_le_Z, tree_formula")] == ["dim_le_Z", "tree_formula"]
    assert len(resolve_checks([])) == len(CHECKS)
    with pytest.raises(UnknownCheckError, match="dim_le_Z"):
        resolve_checks("dim_le_z")
    assert check_names("conjecture") == ["cycle_rank_conjecture"]


def test_tree_checks_are_not_applicable_elsewhere():
    ctx = GraphContext(families.cycle(5))
    assert run_check(CHECKS["tree_formula"], ctx)[0] == "not_applicable"
    assert run_check(CHECKS["dimZ_plus1"], ctx)[0] == "pass"
    assert run_check(CHECKS["unicyclic_bounds"], ctx)[0] == "not_applicable"


def test_seeded_context_skips_the_search():
    ctx = GraphContext(families.path(30), known={"dim_result": (1, (0,)), "z_result": (1, (0,))})
    assert (ctx.dim, ctx.z) == (1, 1)
    with pytest.raises(ValueError):
        GraphContext(families.path(3), known={"profile": None})


def test_tree_sweep_has_no_violations():
    result = family_sweep("all_trees:2-7", ["tree_formula", "dim_le_Z", "dimZ_characterization", "sigma_ex"])
    assert result.graphs_checked == 24
    assert result.theorem_failures == 0
    assert result.violations == []
    for tally in result.tallies.values():
        assert tally.total == 24
    assert result.example_counts["dim_lt_Z"] > 0


def test_t_plus_e_sweep():
    result = t_plus_e_sweep(7)
    assert result.theorem_failures == 0
    assert result.tallies["construction"].failed == 0
    assert result.tallies["construction"].not_applicable == 0
    assert result.tallies["path_plus_e"].passed > 0
    assert result.observations["lower_bound_case_2"] > 0


def test_sharpness_witness_tags(sharp_tree):
    caps = Caps()
    item = SweepItem(sharp_tree.add_edge(3, 5), sharp_tree, (3, 5))
    outcome = evaluate_item(item, SweepOptions(T_PLUS_E_CHECKS, caps))
    assert "dim_eq_Z_plus_1" in outcome.tags
    assert "dim_eq_tree_dim_plus_1" in outcome.tags
    assert all(status != "fail" for status, _ in outcome.statuses.values())


def test_ex_increase_witness():
    t = families.spider(3, 3, 1)
    outcome = evaluate_item(SweepItem(t.add_edge(2, 5), t, (2, 5)), SweepOptions(T_PLUS_E_CHECKS, Caps()))
    assert outcome.values["ex"] > outcome.values["tree_ex"]
    assert "ex_increase" in outcome.tags


def test_cycle_rank_conjecture_equality_family():
    result = cycle_rank_conjecture_check([families.c4_bouquet(1), families.c4_bouquet(2)], name="bouquets")
    assert result.violations == []
    assert result.example_counts["dim_eq_Z_plus_r"] == 2


def test_divergence_search_reports_extremes():
    result = divergence_search([families.grid(3, 3), families.path(4), families.c4_bouquet(1)])
    assert result.observations["max_Z_minus_dim"] == 1
    assert result.examples["max_Z_minus_dim"][0].graph.n == 9
    assert result.observations["max_dim_minus_Z"] == 1
    assert result.example_counts["dim_gt_Z"] == 1


def test_divergence_search_checks_the_known_grids():
    result = divergence_search([families.path(4)])
    tally = result.tallies["grid_divergence"]
    assert (tally.kind, tally.passed, tally.failed, tally.not_applicable) == ("theorem", 2, 0, 0)
    assert "grid_divergence" in result.checks
    assert result.theorem_failures == 0


def test_grids_above_the_cap_are_not_applicable():
    caps = Caps(brute_force=10, path_cover=8)
    tally = divergence_search([families.path(4)], caps=caps).tallies["grid_divergence"]
    assert (tally.passed, tally.not_applicable) == (1, 1)


def test_wrong_grid_value_is_a_theorem_failure(monkeypatch):
    monkeypatch.setattr(sweeps, "GRID_DIVERGENCE", ((3, 3, 2, 2),))
    result = divergence_search([families.path(4)])
    assert result.tallies["grid_divergence"].failed == 1
    assert result.theorem_failures == 1
    violation = result.violations[-1]
    assert violation.check == "grid_divergence" and violation.graph.n == 9


def test_parallel_sweep_matches_sequential():
    checks = ["dim_le_Z", "path_cover"]
    one = family_sweep("all_trees:2-6", checks, workers=1)
    two = family_sweep("all_trees:2-6", checks, workers=2)
    assert one.model_dump(exclude={"timing_seconds"}) == two.model_dump(exclude={"timing_seconds"})


def test_violations_are_reported_not_raised(monkeypatch):
    from app.lab import checks

    monkeypatch.setitem(
        checks.CHECKS,
        "always_fails",
        checks.Check("always_fails", checks.THEOREM, "false", lambda ctx: (checks.FAIL, "by construction")),
    )
    result = family_sweep("path:4", ["always_fails"])
    assert result.theorem_failures == 1
    assert result.violations[0].graph.edges == [(0, 1), (1, 2), (2, 3)]
    assert result.violations[0].confirmed


def test_disconnected_corpus_item_is_rejected():
    from app.utils.errors import DisconnectedGraphError

    with pytest.raises(DisconnectedGraphError):
        evaluate_item(SweepItem(build_graph(4, [(0, 1), (2, 3)])), SweepOptions(("dim_le_Z",), Caps()))


def test_dedup_keeps_one_graph_per_class_and_the_same_verdicts():
    checks = ["dim_le_Z", "tree_formula", "dimZ_characterization"]
    labeled = family_sweep("all_trees:2-6", checks, labeled=True)
    deduped = family_sweep("all_trees:2-6", checks, labeled=True, dedup=True)
    unlabeled = family_sweep("all_trees:2-6", checks)
    assert deduped.graphs_checked == unlabeled.graphs_checked == 13
    assert labeled.graphs_checked > deduped.graphs_checked
    assert deduped.corpus == "all_trees:2-6 (labeled, dedup)"
    for name in checks:
        assert labeled.tallies[name].failed == deduped.tallies[name].failed == 0
        assert deduped.tallies[name].passed + deduped.tallies[name].not_applicable == 13


def test_t_plus_e_dedup_keys_on_the_pair():
    items = family_items("t_plus_e:4", labeled=True, dedup=True)
    # paw from P4 and from K_{1,3}, C4 from P4
    assert len(items) == 3
    assert len({canonical_form(i.g) for i in items}) == 2
    assert len(family_items("t_plus_e:4", labeled=True)) == 16 * 3
