"""Covers by contractible subgraphs and their verification.

A cover member is a vertex set with either its induced edges (the default)
or an explicit edge set. Strict coverage needs the members' vertices and
edges to exhaust the graph; the relaxed ``vertices`` mode only looks at
vertices and its results never enter the bound pipeline.
"""

import logging
from enum import Enum
from typing import Any, Iterable, List, Optional, Sequence, Set, Tuple

from pydantic import BaseModel

from core import brackets
from core.config import SearchBudget
from core.errors import CoverageError, GraphFormatError, UnknownVertexError
from core.graph import Edge, SimpleGraph
from core.graph_io import MemberDocument
from homotopy.contractibility import ContractibilityCache, is_contractible
from homotopy.moves import HomotopyCertificate, RemoveVertex
from homotopy.search import Verdict, VerdictStatus, contractible_in

logger = logging.getLogger(__name__)


class CoverMode(str, Enum):
    IN_ITSELF = "in-itself"
    IN_G = "in-G"


class Coverage(str, Enum):
    STRICT = "strict"
    VERTICES = "vertices"


class CoverMember(BaseModel):
    vertices: List[int]
    edges: Optional[List[Tuple[int, int]]] = None

    def edge_set(self, graph: SimpleGraph) -> Set[Edge]:
        if self.edges is None:
            return set(graph.induced_subgraph(self.vertices).edges)
        return {(min(u, v), max(u, v)) for u, v in self.edges}

    def subgraph(self, graph: SimpleGraph) -> SimpleGraph:
        if self.edges is None:
            return graph.induced_subgraph(self.vertices)
        return SimpleGraph.from_edges(self.edges, self.vertices)


class Cover(BaseModel):
    members: List[CoverMember]

    @classmethod
    def from_vertex_sets(cls, sets: Iterable[Iterable[int]]) -> "Cover":
        return cls(members=[CoverMember(vertices=sorted(s)) for s in sets])

    @classmethod
    def from_documents(cls, documents: Sequence[MemberDocument]) -> "Cover":
        return cls(members=[CoverMember(vertices=d.vertices, edges=d.edges) for d in documents])

    @classmethod
    def parse(cls, payload: Any) -> "Cover":
        """Accept a JSON list of members or an object with a ``members`` list."""
        if isinstance(payload, dict):
            payload = payload.get("members")
        if not isinstance(payload, list):
            raise GraphFormatError("cover must be a list of members", "$")
        members = []
        for i, item in enumerate(payload):
            if isinstance(item, list):
                item = {"vertices": item}
            if not isinstance(item, dict) or "vertices" not in item:
                raise GraphFormatError("cover member needs a 'vertices' list", f"$[{i}]")
            members.append(CoverMember(vertices=item["vertices"], edges=item.get("edges")))
        return cls(members=members)

    def __len__(self) -> int:
        return len(self.members)


class MemberVerdict(BaseModel):
    index: int
    vertices: List[int]
    status: VerdictStatus
    method: str
    certificate: Optional[HomotopyCertificate] = None


class CoverReport(BaseModel):
    """Outcome of verifying a cover.

    ``bound`` is the cover size when every member verified; ``certifies``
    names the invariants it bounds from above (tcat always, gcat in the
    in-itself mode). Relaxed vertex covers are tagged ``vertex-cover``.
    """

    mode: CoverMode
    coverage: Coverage
    members: List[MemberVerdict]
    verified: bool
    inconclusive: bool
    bound: Optional[int] = None
    bound_method: str = brackets.COVER
    certifies: List[str] = []


def check_coverage(graph: SimpleGraph, cover: Cover, coverage: Coverage = Coverage.STRICT) -> None:
    """Raise ``CoverageError`` if the members miss any vertex (or edge, when strict)."""
    covered_vertices: Set[int] = set()
    covered_edges: Set[Edge] = set()
    for member in cover.members:
        unknown = set(member.vertices).difference(graph.vertices)
        if unknown:
            raise UnknownVertexError(unknown)
        covered_vertices.update(member.vertices)
        if coverage == Coverage.STRICT:
            edges = member.edge_set(graph)
            foreign = [e for e in edges if not graph.has_edge(*e) or not set(e) <= set(member.vertices)]
            if foreign:
                raise GraphFormatError(f"member edges {sorted(foreign)} are not edges of the graph inside the member")
            covered_edges.update(edges)
    missing_vertices = set(graph.vertices) - covered_vertices
    missing_edges = set(graph.edges) - covered_edges if coverage == Coverage.STRICT else set()
    if missing_vertices or missing_edges:
        raise CoverageError(missing_vertices, missing_edges)


def _itself(member: CoverMember, graph: SimpleGraph, cache: Optional[ContractibilityCache]) -> Verdict:
    subgraph = member.subgraph(graph)
    result = is_contractible(subgraph, cache)
    if result:
        removals = [RemoveVertex(vertex=v) for v in result.witness[:-1]]
        return Verdict(
            status=VerdictStatus.EQUIVALENT,
            certificate=HomotopyCertificate.build(subgraph, removals, marked=subgraph.vertices),
        )
    return Verdict(status=VerdictStatus.DISTINCT, reason="not contractible in itself")


def verify_cover(
    graph: SimpleGraph,
    cover: Cover,
    mode: CoverMode = CoverMode.IN_ITSELF,
    budget: Optional[SearchBudget] = None,
    coverage: Coverage = Coverage.STRICT,
    cache: Optional[ContractibilityCache] = None,
) -> CoverReport:
    """Check coverage, then contractibility of every member.

    Raises:
        CoverageError: uncovered vertices or edges
    """
    check_coverage(graph, cover, coverage)
    verdicts = []
    for i, member in enumerate(cover.members):
        if mode == CoverMode.IN_ITSELF:
            verdict = _itself(member, graph, cache)
            method = "in-itself"
        else:
            verdict = contractible_in(member.vertices, graph, budget, cache, edges=member.edges)
            method = "in-itself" if verdict.reason == "contractible in itself" else "in-G"
        verdicts.append(
            MemberVerdict(
                index=i,
                vertices=sorted(member.vertices),
                status=verdict.status,
                method=method,
                certificate=verdict.certificate,
            )
        )
    verified = all(v.status == VerdictStatus.EQUIVALENT for v in verdicts)
    inconclusive = not verified and not any(v.status == VerdictStatus.DISTINCT for v in verdicts)
    if coverage == Coverage.VERTICES:
        certifies, method = [], brackets.VERTEX_COVER
    elif mode == CoverMode.IN_ITSELF:
        certifies, method = ["tcat", "gcat"], brackets.COVER
    else:
        certifies, method = ["tcat"], brackets.COVER
    report = CoverReport(
        mode=mode,
        coverage=coverage,
        members=verdicts,
        verified=verified,
        inconclusive=inconclusive,
        bound=len(cover) if verified else None,
        bound_method=method,
        certifies=certifies if verified else [],
    )
    if inconclusive:
        logger.warning("Cover verification inconclusive: some members hit the search budget")
    return report


def normalize_cover(
    graph: SimpleGraph,
    cover: Cover,
    contractible: Iterable[int],
    cache: Optional[ContractibilityCache] = None,
) -> Optional[Cover]:
    """Make every member meet a contractible vertex set H in nothing or all of H.

    A member meeting H partially absorbs H when the union stays contractible,
    otherwise sheds H when the rest stays contractible. Members come back as
    induced subgraphs. Returns None when some member admits neither, or when
    the result fails verification.
    """
    target = frozenset(contractible)
    members = []
    for member in cover.members:
        vertices = frozenset(member.vertices)
        overlap = vertices & target
        if not overlap or overlap == target:
            members.append(CoverMember(vertices=sorted(vertices)))
            continue
        absorbed = vertices | target
        if is_contractible(graph.induced_subgraph(absorbed), cache):
            members.append(CoverMember(vertices=sorted(absorbed)))
            continue
        shed = vertices - target
        if shed and is_contractible(graph.induced_subgraph(shed), cache):
            members.append(CoverMember(vertices=sorted(shed)))
            continue
        logger.debug("Member %s can neither absorb nor shed %s", sorted(vertices), sorted(target))
        return None
    normalized = Cover(members=members)
    try:
        report = verify_cover(graph, normalized, CoverMode.IN_ITSELF, cache=cache)
    except CoverageError:
        return None
    return normalized if report.verified else None
