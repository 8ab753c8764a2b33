# app/models/schemas.py
"""
Pydantic schemas for reports, API inputs and API outputs.
"""
from typing import Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, Field, model_validator

from app.core.graph import Graph, build_graph, to_graph6

CheckKind = Literal["theorem", "conjecture"]
Status = Literal["pass", "fail", "not_applicable"]


class GraphRecord(BaseModel):
    n: int
    edges: List[Tuple[int, int]]
    graph6: Optional[str] = None

    @classmethod
    def from_graph(cls, g: Graph) -> "GraphRecord":
        return cls(n=g.n, edges=[tuple(e) for e in g.edges], graph6=to_graph6(g) if g.n else None)

    def to_graph(self) -> Graph:
        return build_graph(self.n, self.edges)

    def sort_key(self):
        return (self.n, self.edges)


class Verdict(BaseModel):
    check: str
    kind: CheckKind
    statement: str = Field(..., description="The inequality or equality this verdict instantiates")
    status: Status
    detail: Optional[str] = None


class ParameterReport(BaseModel):
    graph: GraphRecord
    graph_class: str
    n: int
    m: int
    r: int
    delta: int
    dim: int
    dim_witness: List[int]
    dim_method: Literal["bruteforce", "tree-formula", "both"]
    dim_formula: Optional[int] = None
    Z: int
    Z_witness: List[int]
    P: Optional[int] = None
    P_witness: Optional[List[List[int]]] = None
    sigma: int
    ex: int
    twins: List[Tuple[int, int]] = []
    predicates: Dict[str, bool] = {}
    verdicts: List[Verdict] = []
    timing: Optional[Dict[str, float]] = None


class CheckTally(BaseModel):
    kind: CheckKind
    passed: int = 0
    failed: int = 0
    not_applicable: int = 0

    @property
    def total(self) -> int:
        return self.passed + self.failed + self.not_applicable


class Violation(BaseModel):
    check: str
    kind: CheckKind
    graph: GraphRecord
    detail: str
    confirmed: bool = Field(True, description="Recomputed with the colex and reverse subset orders")
    tree: Optional[GraphRecord] = None
    edge: Optional[Tuple[int, int]] = None


class ExampleRecord(BaseModel):
    graph: GraphRecord
    values: Dict[str, int] = {}
    tree: Optional[GraphRecord] = None
    edge: Optional[Tuple[int, int]] = None


class SweepResult(BaseModel):
    corpus: str
    checks: List[str]
    graphs_checked: int = 0
    tallies: Dict[str, CheckTally] = {}
    violations: List[Violation] = []
    examples: Dict[str, List[ExampleRecord]] = {}
    example_counts: Dict[str, int] = {}
    observations: Dict[str, int] = {}
    timing_seconds: Optional[float] = None

    @property
    def theorem_failures(self) -> int:
        return sum(t.failed for t in self.tallies.values() if t.kind == "theorem")


class FixtureOutcome(BaseModel):
    name: str
    statement: str
    status: Literal["pass", "fail", "skipped"]
    detail: Optional[str] = None


class SuiteResult(BaseModel):
    fixtures: List[FixtureOutcome] = []
    sweeps: Dict[str, SweepResult] = {}
    passed: bool = True
    timing_seconds: Optional[float] = None


class FamilySpec(BaseModel):
    name: str
    params: List[int] = []

    def __str__(self) -> str:
        if not self.params:
            return self.name
        if self.name in ("all_trees", "all_connected", "t_plus_e"):
            lo, hi = self.params
            return f"{self.name}:{lo}" if lo == hi else f"{self.name}:{lo}-{hi}"
        return f"{self.name}:{','.join(str(p) for p in self.params)}"


class GraphIn(BaseModel):
    """One graph: an edge list, a graph6 string or a family spec naming exactly one graph."""

    n: Optional[int] = None
    edges: Optional[List[Tuple[int, int]]] = None
    graph6: Optional[str] = None
    family: Optional[str] = None
    method: Literal["formula", "bruteforce", "both"] = "bruteforce"
    path_cover: bool = False

    @model_validator(mode="after")
    def _one_source(self):
        given = [self.n is not None, self.graph6 is not None, self.family is not None]
        if sum(given) != 1:
            raise ValueError("give exactly one of n/edges, graph6 or family")
        return self


class SweepRequest(BaseModel):
    family: str
    checks: List[str] = []
    labeled: bool = False
