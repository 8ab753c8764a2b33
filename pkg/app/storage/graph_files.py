# app/storage/graph_files.py
"""
Graph file formats.

Exposes:
 - parse_edgelist(text, source), parse_edgelists(text, source) / format_edgelist(g)
 - parse_graph6(text, source) / format_graph6(graphs)
 - parse_json_graphs(text, source) / format_graphs(graphs, fmt)
 - read_graphs(path) / write_graphs(path, graphs, fmt)

Edge-list grammar: the first data line is "n m", then m lines "u v" with 0-based
indices. Blank lines and "#" comments are ignored. graph6 files hold one graph per
line with an optional ">>graph6<<" header. JSON files hold a list of {"n", "edges"} records.
"""
import json
import logging
from pathlib import Path
from typing import Iterable, List, Optional, Union

import networkx as nx
from pydantic import TypeAdapter, ValidationError

from app.core.graph import Graph, build_graph, from_networkx, to_graph6
from app.models.schemas import GraphRecord
from app.utils.errors import GraphConstructionError, ParseError

logger = logging.getLogger("dimforce.storage.graph_files")

GRAPH6_HEADER = ">>graph6<<"
FORMATS = ("edgelist", "graph6", "json")


def _data_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def _ints(line: str, lineno: int, source: str) -> List[int]:
    fields = line.split()
    if len(fields) != 2:
        raise ParseError(f"expected two integers, got {line!r}", source, lineno)
    try:
        return [int(fields[0]), int(fields[1])]
    except ValueError:
        raise ParseError(f"expected two integers, got {line!r}", source, lineno)


def _parse_block(lines, start: int, source: str):
    """One graph starting at lines[start]; returns it with the index after its last edge."""
    header_line, header = lines[start]
    n, m = _ints(header, header_line, source)
    if n < 0 or m < 0:
        raise ParseError("n and m must be non-negative", source, header_line)
    body = lines[start + 1 : start + 1 + m]
    if len(body) != m:
        where = body[-1][0] if body else header_line
        raise ParseError(f"header announces {m} edges but only {len(body)} edge lines follow", source, where)
    edges = []
    for lineno, line in body:
        u, v = _ints(line, lineno, source)
        try:
            build_graph(n, [(u, v)])
        except GraphConstructionError as exc:
            raise ParseError(str(exc), source, lineno)
        edges.append((u, v))
    return build_graph(n, edges), start + 1 + m


def parse_edgelist(text: str, source: str = "<input>") -> Graph:
    lines = list(_data_lines(text))
    if not lines:
        raise ParseError("empty edge list; expected a header line 'n m'", source, 1)
    g, end = _parse_block(lines, 0, source)
    if end != len(lines):
        raise ParseError(f"unexpected line after {g.number_of_edges} edges: {lines[end][1]!r}", source, lines[end][0])
    return g


def parse_edgelists(text: str, source: str = "<input>") -> List[Graph]:
    """Several edge-list blocks back to back."""
    lines = list(_data_lines(text))
    graphs = []
    pos = 0
    while pos < len(lines):
        g, pos = _parse_block(lines, pos, source)
        graphs.append(g)
    return graphs


def format_edgelist(g: Graph) -> str:
    lines = [f"{g.n} {g.number_of_edges}"]
    lines += [f"{u} {v}" for u, v in g.edges]
    return "\n".join(lines) + "\n"


def parse_graph6(text: str, source: str = "<input>") -> List[Graph]:
    graphs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line.startswith(GRAPH6_HEADER):
            line = line[len(GRAPH6_HEADER):]
        if not line:
            continue
        try:
            graphs.append(from_networkx(nx.from_graph6_bytes(line.encode("ascii"))))
        except (nx.NetworkXError, ValueError, UnicodeEncodeError) as exc:
            raise ParseError(f"bad graph6 line: {exc}", source, lineno)
    return graphs


def format_graph6(graphs: Iterable[Graph]) -> str:
    return "".join(to_graph6(g) + "\n" for g in graphs)


_RECORDS = TypeAdapter(List[GraphRecord])


def parse_json_graphs(text: str, source: str = "<input>") -> List[Graph]:
    try:
        records = _RECORDS.validate_json(text)
    except ValidationError as exc:
        raise ParseError(f"expected a JSON list of {{n, edges}} records: {exc.error_count()} error(s)", source)
    graphs = []
    for i, record in enumerate(records):
        try:
            graphs.append(record.to_graph())
        except GraphConstructionError as exc:
            raise ParseError(f"record {i}: {exc}", source)
    return graphs


def format_graphs(graphs: Iterable[Graph], fmt: str = "edgelist") -> str:
    graphs = list(graphs)
    if fmt == "graph6":
        return format_graph6(graphs)
    if fmt == "json":
        records = [GraphRecord.from_graph(g).model_dump(mode="json") for g in graphs]
        return json.dumps(records, sort_keys=True, indent=2) + "\n"
    if fmt != "edgelist":
        raise ParseError(f"unknown format {fmt!r}; expected one of {', '.join(FORMATS)}", "--format")
    return "\n".join(format_edgelist(g) for g in graphs)


def detect_format(path: Union[str, Path]) -> str:
    suffix = Path(path).suffix.lower()
    if suffix == ".json":
        return "json"
    return "graph6" if suffix in (".g6", ".graph6") else "edgelist"


def read_graphs(path: Union[str, Path], fmt: Optional[str] = None) -> List[Graph]:
    path = Path(path)
    fmt = fmt or detect_format(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read file: {exc.strerror}", str(path))
    if fmt == "graph6":
        graphs = parse_graph6(text, str(path))
    elif fmt == "json":
        graphs = parse_json_graphs(text, str(path))
    else:
        graphs = parse_edgelists(text, str(path))
    logger.info("read %d graph(s) from %s", len(graphs), path)
    return graphs


def write_graphs(path: Union[str, Path], graphs: Iterable[Graph], fmt: str = "edgelist") -> Path:
    """Edge-list output separates graphs with a blank line."""
    path = Path(path)
    graphs = list(graphs)
    text = format_graphs(graphs, fmt)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    logger.info("wrote %d graph(s) to %s (%s)", len(graphs), path, fmt)
    return path
