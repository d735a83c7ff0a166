"""Graph input/output: edge-list text, graph6 and JSON documents.

Every parser reports the position of the first bad item. ``load_graph`` is the
single entry point used by the CLI; it accepts ``fixture:NAME``, ``-`` for an
edge list on standard input, or a file path whose format is sniffed.
"""

import json
import logging
import os
import sys
from typing import Any, Dict, List, Optional, TextIO, Tuple

import networkx as nx
from pydantic import BaseModel, Field, ValidationError

from core.errors import GraphFormatError, InputFileError, NonSimpleGraphError
from core.graph import SimpleGraph

logger = logging.getLogger(__name__)

GRAPH6_HEADER = ">>graph6<<"
# Larger inputs are far beyond what any exact routine here can handle
MAX_FILE_SIZE_BYTES = 1_000_000


class MemberDocument(BaseModel):
    """One cover member: a vertex set plus an optional explicit edge set."""

    vertices: List[int]
    edges: Optional[List[Tuple[int, int]]] = None


class GraphMetadata(BaseModel):
    """Data attached to a graph: named covers, orderings and certificates.

    Orderings list the vertices from lowest to highest value. Certificates are
    move lists in the homotopy certificate format and are validated only when
    replayed.
    """

    covers: Dict[str, List[MemberDocument]] = Field(default_factory=dict)
    orderings: Dict[str, List[int]] = Field(default_factory=dict)
    certificates: Dict[str, List[Dict[str, Any]]] = Field(default_factory=dict)
    notes: List[str] = Field(default_factory=list)


class GraphDocument(BaseModel):
    vertices: List[int]
    edges: List[Tuple[int, int]] = Field(default_factory=list)
    metadata: Optional[GraphMetadata] = None

    @classmethod
    def from_graph(cls, graph: SimpleGraph, metadata: Optional[GraphMetadata] = None) -> "GraphDocument":
        return cls(vertices=list(graph.vertices), edges=[tuple(e) for e in graph.edges], metadata=metadata)

    def to_graph(self) -> SimpleGraph:
        return SimpleGraph.from_edges(self.edges, self.vertices)


class LoadedGraph(BaseModel):
    """A parsed graph together with where it came from."""

    model_config = {"arbitrary_types_allowed": True}

    source: str
    graph: SimpleGraph
    metadata: GraphMetadata = Field(default_factory=GraphMetadata)


# ============================================================================
# Edge lists
# ============================================================================

def parse_edge_list(text: str) -> SimpleGraph:
    """Parse ``u v`` lines; a line with a single id declares an isolated vertex.

    Raises:
        GraphFormatError: a line that is not one or two integers
        NonSimpleGraphError: a loop or a repeated edge
    """
    vertices: List[int] = []
    edges: List[Tuple[int, int]] = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        try:
            ids = [int(f) for f in fields]
        except ValueError:
            raise GraphFormatError(f"expected integer vertex ids, got {line!r}", f"line {lineno}") from None
        if len(ids) not in (1, 2) or any(i < 0 for i in ids):
            raise GraphFormatError(f"expected 'u v' or 'v' with non-negative ids, got {line!r}", f"line {lineno}")
        if len(ids) == 1:
            vertices.append(ids[0])
            continue
        u, v = ids
        if u == v:
            raise NonSimpleGraphError(f"self-loop at vertex {u}", f"line {lineno}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise NonSimpleGraphError(f"duplicate edge {key[0]}-{key[1]}", f"line {lineno}")
        seen.add(key)
        edges.append(key)
    return SimpleGraph.from_edges(edges, vertices)


def serialize_edge_list(graph: SimpleGraph) -> str:
    """Normalized edge list: ids renumbered 0..n-1 in order, edges ascending,
    then isolated vertices one per line."""
    normal = graph.normalized()
    lines = [f"{u} {v}" for u, v in normal.edges]
    lines.extend(str(v) for v in normal.vertices if normal.degree(v) == 0)
    return "".join(line + "\n" for line in lines)


# ============================================================================
# graph6
# ============================================================================

def strip_graph6_header(text: str) -> str:
    s = text.strip()
    if s.startswith(GRAPH6_HEADER):
        s = s[len(GRAPH6_HEADER):].strip()
    return s


def parse_graph6(text: str) -> SimpleGraph:
    """Decode one graph6 string (header optional) into vertices 0..n-1."""
    body = strip_graph6_header(text)
    if not body or "\n" in body:
        raise GraphFormatError("graph6 input must hold exactly one graph", "line 1")
    bad = next((i for i, ch in enumerate(body) if not 63 <= ord(ch) <= 126), None)
    if bad is not None:
        raise GraphFormatError(f"invalid graph6 character {body[bad]!r}", f"byte {bad}")
    try:
        decoded = nx.from_graph6_bytes(body.encode("ascii"))
    except (nx.NetworkXError, ValueError) as e:
        raise GraphFormatError(f"malformed graph6 data: {e}", "byte 0") from None
    return SimpleGraph.from_networkx(decoded)


def serialize_graph6(graph: SimpleGraph, header: bool = False) -> str:
    data = nx.to_graph6_bytes(graph.normalized().to_networkx(), header=header)
    return data.decode("ascii").strip()


# ============================================================================
# JSON
# ============================================================================

def parse_json_document(text: str) -> GraphDocument:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as e:
        raise GraphFormatError(f"invalid JSON: {e.msg}", f"line {e.lineno} column {e.colno}") from None
    try:
        document = GraphDocument.model_validate(payload)
    except ValidationError as e:
        first = e.errors()[0]
        path = "$" + "".join(f"[{p}]" if isinstance(p, int) else f".{p}" for p in first["loc"])
        raise GraphFormatError(first["msg"], path) from None
    # Surface loop/duplicate errors with a JSON path
    seen = set()
    for i, (u, v) in enumerate(document.edges):
        key = (min(u, v), max(u, v))
        if u == v:
            raise NonSimpleGraphError(f"self-loop at vertex {u}", f"$.edges[{i}]")
        if key in seen:
            raise NonSimpleGraphError(f"duplicate edge {key[0]}-{key[1]}", f"$.edges[{i}]")
        seen.add(key)
    return document


def parse_json(text: str) -> SimpleGraph:
    return parse_json_document(text).to_graph()


def serialize_json(graph: SimpleGraph, metadata: Optional[GraphMetadata] = None) -> str:
    document = GraphDocument.from_graph(graph, metadata)
    return document.model_dump_json(exclude_none=True, indent=2)


# ============================================================================
# Sources
# ============================================================================

def read_text_file(path: str) -> str:
    """Read a small text file, raising ``InputFileError`` on any problem."""
    try:
        normalized = os.path.abspath(os.path.expanduser(path.strip()))
    except Exception as e:
        raise InputFileError(f"could not normalize path {path!r}: {e}") from None
    if not os.path.exists(normalized):
        raise InputFileError(f"file does not exist: {normalized}")
    if not os.path.isfile(normalized):
        raise InputFileError(f"path exists but is not a file: {normalized}")
    size = os.path.getsize(normalized)
    if size > MAX_FILE_SIZE_BYTES:
        raise InputFileError(f"file is too large ({size} bytes > {MAX_FILE_SIZE_BYTES} bytes)")
    try:
        with open(normalized, "r", encoding="utf-8", errors="replace") as handle:
            return handle.read()
    except OSError as e:
        raise InputFileError(f"failed to read file {normalized!r}: {e}") from None


def sniff_format(path: str, text: str) -> str:
    extension = os.path.splitext(path)[1].lower()
    if extension == ".json":
        return "json"
    if extension in (".g6", ".graph6"):
        return "graph6"
    if extension in (".txt", ".edges", ".el"):
        return "edges"
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return "json"
    if stripped.startswith(GRAPH6_HEADER):
        return "graph6"
    return "edges"


def parse_text(text: str, fmt: str) -> Tuple[SimpleGraph, GraphMetadata]:
    if fmt == "json":
        document = parse_json_document(text)
        return document.to_graph(), document.metadata or GraphMetadata()
    if fmt == "graph6":
        return parse_graph6(text), GraphMetadata()
    return parse_edge_list(text), GraphMetadata()


def load_graph(source: str, stdin: Optional[TextIO] = None) -> LoadedGraph:
    """Resolve a CLI graph argument.

    Args:
        source: ``fixture:NAME``, ``-`` or a file path
        stdin: Stream used for ``-`` (defaults to ``sys.stdin``)
    """
    if source.startswith("fixture:"):
        from core.fixtures import fixture

        named = fixture(source[len("fixture:"):])
        return LoadedGraph(source=source, graph=named.graph, metadata=named.metadata)
    if source == "-":
        text = (stdin or sys.stdin).read()
        return LoadedGraph(source="<stdin>", graph=parse_edge_list(text))
    text = read_text_file(source)
    fmt = sniff_format(source, text)
    logger.debug("Reading %s as %s", source, fmt)
    graph, metadata = parse_text(text, fmt)
    return LoadedGraph(source=source, graph=graph, metadata=metadata)


def load_json_file(path: str) -> Any:
    """Parse an auxiliary JSON file (cover, ordering, certificate)."""
    text = read_text_file(path)
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise GraphFormatError(f"invalid JSON: {e.msg}", f"{path} line {e.lineno} column {e.colno}") from None
