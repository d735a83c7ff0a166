"""The four homotopy moves, their side conditions, and certificate replay.

Certificates are JSON documents::

    {"start": {"vertices": [...], "edges": [...]},
     "moves": [{"kind": "add_vertex", "vertex": 9, "over": [1, 2]}, ...],
     "marked": [1, 2, 3]}

``marked`` is optional; when present it is carried through the moves by the
induced deformation.
"""

import logging
from dataclasses import dataclass
from typing import Annotated, FrozenSet, Iterable, List, Literal, Mapping, Optional, Union

from pydantic import BaseModel, Field

from core.errors import CertificateError, MoveConditionError, UnknownVertexError
from core.graph import SimpleGraph
from core.graph_io import GraphDocument
from homotopy.contractibility import ContractibilityCache, is_contractible

logger = logging.getLogger(__name__)


class RemoveVertex(BaseModel):
    kind: Literal["remove_vertex"] = "remove_vertex"
    vertex: int

    def describe(self) -> str:
        return f"RemoveVertex({self.vertex})"


class AddVertex(BaseModel):
    kind: Literal["add_vertex"] = "add_vertex"
    vertex: int
    over: List[int]

    def describe(self) -> str:
        return f"AddVertex({self.vertex}, {sorted(self.over)})"


class AddEdge(BaseModel):
    kind: Literal["add_edge"] = "add_edge"
    u: int
    v: int

    def describe(self) -> str:
        return f"AddEdge({self.u}, {self.v})"


class RemoveEdge(BaseModel):
    kind: Literal["remove_edge"] = "remove_edge"
    u: int
    v: int

    def describe(self) -> str:
        return f"RemoveEdge({self.u}, {self.v})"


Move = Annotated[Union[RemoveVertex, AddVertex, AddEdge, RemoveEdge], Field(discriminator="kind")]


class MoveList(BaseModel):
    moves: List[Move]


class HomotopyCertificate(BaseModel):
    """A start graph and a move sequence, optionally tracking a marked vertex set."""

    start: GraphDocument
    moves: List[Move] = Field(default_factory=list)
    marked: Optional[List[int]] = None

    @classmethod
    def build(
        cls, start: SimpleGraph, moves: Iterable["Move"], marked: Optional[Iterable[int]] = None
    ) -> "HomotopyCertificate":
        return cls(
            start=GraphDocument.from_graph(start),
            moves=list(moves),
            marked=None if marked is None else sorted(marked),
        )


def parse_moves(raw: List[dict]) -> List[Move]:
    return MoveList.model_validate({"moves": raw}).moves


# ============================================================================
# Side conditions
# ============================================================================

def _common_sphere(graph: SimpleGraph, u: int, v: int) -> SimpleGraph:
    return graph.induced_subgraph(graph.neighbors(u) & graph.neighbors(v))


def check_move(graph: SimpleGraph, move: Move, cache: Optional[ContractibilityCache] = None) -> None:
    """Raise ``MoveConditionError`` unless ``move`` is legal on ``graph``."""
    if isinstance(move, RemoveVertex):
        sphere = graph.sphere(move.vertex)
        if not is_contractible(sphere, cache):
            raise MoveConditionError(f"sphere of {move.vertex} is not contractible", sphere.vertices)
    elif isinstance(move, AddVertex):
        if move.vertex in graph:
            raise MoveConditionError(f"vertex {move.vertex} already exists", [move.vertex])
        if not move.over:
            raise MoveConditionError("pyramid base is empty")
        base = graph.induced_subgraph(move.over)
        if not is_contractible(base, cache):
            raise MoveConditionError("pyramid base is not contractible", base.vertices)
    else:
        for w in (move.u, move.v):
            if w not in graph:
                raise UnknownVertexError([w])
        if move.u == move.v:
            raise MoveConditionError(f"edge {move.u}-{move.v} would be a loop", [move.u])
        adjacent = graph.has_edge(move.u, move.v)
        if isinstance(move, AddEdge) and adjacent:
            raise MoveConditionError(f"edge {move.u}-{move.v} already present", [move.u, move.v])
        if isinstance(move, RemoveEdge) and not adjacent:
            raise MoveConditionError(f"edge {move.u}-{move.v} not present", [move.u, move.v])
        common = _common_sphere(graph, move.u, move.v)
        if not is_contractible(common, cache):
            raise MoveConditionError(
                f"common sphere of {move.u} and {move.v} is not contractible", common.vertices
            )


def apply_move(graph: SimpleGraph, move: Move, cache: Optional[ContractibilityCache] = None) -> SimpleGraph:
    """Apply a legal move; the side condition is checked first.

    Raises:
        MoveConditionError: the side condition fails
        UnknownVertexError: the move names a missing vertex
    """
    check_move(graph, move, cache)
    return apply_unchecked(graph, move)


def apply_unchecked(graph: SimpleGraph, move: Move) -> SimpleGraph:
    if isinstance(move, RemoveVertex):
        return graph.without([move.vertex])
    if isinstance(move, AddVertex):
        return graph.with_vertex(move.vertex, move.over)
    if isinstance(move, AddEdge):
        return graph.with_edge(move.u, move.v)
    return graph.without_edge(move.u, move.v)


def deform_marked(move: Move, marked: FrozenSet[int]) -> FrozenSet[int]:
    """Induced deformation of a marked vertex set.

    Removal restricts, a pyramid over H joins the marked set exactly when H
    meets it, and edge moves leave the vertex set alone.
    """
    if isinstance(move, RemoveVertex):
        return marked - {move.vertex}
    if isinstance(move, AddVertex) and marked.intersection(move.over):
        return marked | {move.vertex}
    return marked


def inverse_move(graph: SimpleGraph, move: Move) -> Move:
    """The move undoing ``move``, where ``graph`` is the graph it was applied to."""
    if isinstance(move, RemoveVertex):
        return AddVertex(vertex=move.vertex, over=sorted(graph.neighbors(move.vertex)))
    if isinstance(move, AddVertex):
        return RemoveVertex(vertex=move.vertex)
    if isinstance(move, AddEdge):
        return RemoveEdge(u=move.u, v=move.v)
    return AddEdge(u=move.u, v=move.v)


def relabel_move(move: Move, mapping: Mapping[int, int]) -> Move:
    if isinstance(move, RemoveVertex):
        return RemoveVertex(vertex=mapping[move.vertex])
    if isinstance(move, AddVertex):
        return AddVertex(vertex=mapping[move.vertex], over=sorted(mapping[w] for w in move.over))
    return type(move)(u=mapping[move.u], v=mapping[move.v])


# ============================================================================
# Replay
# ============================================================================

@dataclass(frozen=True)
class Replay:
    graph: SimpleGraph
    marked: Optional[FrozenSet[int]]
    steps: int


def replay(certificate: HomotopyCertificate, cache: Optional[ContractibilityCache] = None) -> Replay:
    """Replay every move, validating side conditions.

    Raises:
        CertificateError: at the first illegal step (1-based index)
    """
    graph = certificate.start.to_graph()
    marked = None if certificate.marked is None else frozenset(certificate.marked)
    if marked is not None and not marked <= set(graph.vertices):
        raise CertificateError(0, f"marked vertices {sorted(marked - set(graph.vertices))} not in start graph")
    for step, move in enumerate(certificate.moves, start=1):
        try:
            graph = apply_move(graph, move, cache)
        except (MoveConditionError, UnknownVertexError) as e:
            raise CertificateError(step, f"{move.describe()}: {e}") from e
        if marked is not None:
            marked = deform_marked(move, marked)
    logger.debug("Replayed %d moves, end graph has %d vertices", len(certificate.moves), graph.order)
    return Replay(graph=graph, marked=marked, steps=len(certificate.moves))


def verify_certificate(certificate: HomotopyCertificate, cache: Optional[ContractibilityCache] = None) -> SimpleGraph:
    """Replay the certificate and return its end graph."""
    return replay(certificate, cache).graph
