import csv
import json
import random

import networkx as nx
import pytest

from app.core.graph import from_networkx
from app.lab import families
from app.lab.sweeps import family_sweep
from app.models.schemas import SweepResult
from app.storage.graph_files import (
    format_graphs,
    parse_edgelist,
    parse_edgelists,
    parse_graph6,
    parse_json_graphs,
    read_graphs,
    write_graphs,
)
from app.storage.reports_store import dump_json, load_report_json, save_report_json, save_summary_csv
from app.utils.errors import ParseError


def test_edgelist_with_comments():
    g = parse_edgelist("# a path\n3 2\n0 1  # first edge\n\n1 2\n")
    assert g == families.path(3)


@pytest.mark.parametrize(
    "text, line, fragment",
    [
        ("3 2\n0 1\nx y\n", 3, "two integers"),
        ("4 3\n0 1\n", 2, "3 edges"),
        ("3 1\n0 5\n", 2, "invalid edge"),
        ("3 1\n1 1\n", 2, "invalid edge"),
        ("2 1\n0 1\n1 0\n", 3, "unexpected line"),
        ("", 1, "empty"),
    ],
)
def test_edgelist_errors_carry_line_numbers(text, line, fragment):
    with pytest.raises(ParseError) as info:
        parse_edgelist(text, "g.txt")
    assert info.value.line == line
    assert info.value.source == "g.txt"
    assert fragment in str(info.value)


def test_several_edgelist_blocks():
    graphs = parse_edgelists("2 1\n0 1\n\n3 3\n0 1\n1 2\n0 2\n\n1 0\n")
    assert [g.n for g in graphs] == [2, 3, 1]
    assert graphs[1] == families.complete(3)


def test_graph6_lines():
    text = ">>graph6<<" + format_graphs([families.cycle(5), families.star(3)], "graph6")
    assert parse_graph6(text) == [families.cycle(5), families.star(3)]
    with pytest.raises(ParseError) as info:
        parse_graph6("D??\nDxxx\n", "bad.g6")
    assert info.value.line == 2


def test_json_records():
    graphs = parse_json_graphs('[{"n": 3, "edges": [[0, 1], [1, 2]]}]')
    assert graphs == [families.path(3)]
    with pytest.raises(ParseError):
        parse_json_graphs('[{"n": 3}]')
    with pytest.raises(ParseError, match="record 0"):
        parse_json_graphs('[{"n": 2, "edges": [[0, 2]]}]')


def test_unknown_output_format():
    with pytest.raises(ParseError, match="--format"):
        format_graphs([families.path(2)], "dot")


@pytest.mark.parametrize("fmt, suffix", [("edgelist", ".txt"), ("graph6", ".g6"), ("json", ".json")])
def test_random_trees_survive_every_format(tmp_path, fmt, suffix):
    rng = random.Random(7)
    trees = []
    for _ in range(100):
        n = rng.randint(3, 12)
        seq = [rng.randrange(n) for _ in range(n - 2)]
        trees.append(from_networkx(nx.from_prufer_sequence(seq)))
    path = write_graphs(tmp_path / f"trees{suffix}", trees, fmt)
    assert read_graphs(path) == trees


def test_missing_file(tmp_path):
    with pytest.raises(ParseError, match="cannot read"):
        read_graphs(tmp_path / "absent.txt")


def test_report_files(tmp_path):
    result = family_sweep("all_trees:2-5", ["dim_le_Z", "tree_formula"])
    result.timing_seconds = None
    path = save_report_json(tmp_path / "out" / "sweep.json", result)
    assert path.read_text().endswith("}\n")
    assert json.loads(path.read_text())["graphs_checked"] == 7
    assert load_report_json(path) == result
    assert dump_json(result) == path.read_text()

    rows = list(csv.DictReader(save_summary_csv(tmp_path / "sweep.csv", result).open()))
    assert [r["check"] for r in rows] == ["dim_le_Z", "tree_formula"]
    assert rows[0] == {"check": "dim_le_Z", "kind": "theorem", "passed": "7", "failed": "0", "not_applicable": "0"}


def test_loading_a_foreign_report(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"fixtures": 3}')
    with pytest.raises(ParseError, match="SweepResult"):
        load_report_json(bad, SweepResult)
