# app/api/graphs.py
import logging

from fastapi import APIRouter

from app.config import get_settings
from app.core.graph import Graph, build_graph
from app.lab.families import generate, parse_family, single_graph
from app.lab.report import compute_report
from app.models.schemas import GraphIn, GraphRecord, ParameterReport
from app.storage.graph_files import parse_graph6
from app.utils.errors import ParseError

logger = logging.getLogger("dimforce.api.graphs")
router = APIRouter()


def graph_from_input(payload: GraphIn) -> Graph:
    if payload.family is not None:
        return single_graph(payload.family)
    if payload.graph6 is not None:
        graphs = parse_graph6(payload.graph6, "graph6")
        if len(graphs) != 1:
            raise ParseError(f"expected one graph6 string, got {len(graphs)}", "graph6")
        return graphs[0]
    return build_graph(payload.n, payload.edges or [])


@router.post("/compute", response_model=ParameterReport, summary="Parameters of one graph")
def compute(payload: GraphIn):
    """
    dim, Z (and P when `path_cover` is set) with witnesses and every applicable verdict.
    Brute force is bounded by the configured caps.
    """
    g = graph_from_input(payload)
    logger.info("compute n=%d m=%d method=%s", g.n, g.number_of_edges, payload.method)
    return compute_report(g, method=payload.method, path_cover=payload.path_cover, caps=get_settings().caps())


@router.get("/families/{spec}", summary="Graphs of a family")
def family_graphs(spec: str, labeled: bool = False):
    parsed = parse_family(spec)
    graphs = [GraphRecord.from_graph(g) for g in generate(parsed, labeled=labeled, caps=get_settings().caps())]
    return {"family": str(parsed), "count": len(graphs), "graphs": graphs}
