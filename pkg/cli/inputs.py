"""Auxiliary CLI inputs: orderings, covers and homotopy certificates."""

import logging
from typing import List, Optional

from pydantic import ValidationError

from category.covers import Cover
from core.errors import GraphFormatError
from core.graph import SimpleGraph
from core.graph_io import LoadedGraph, load_json_file
from homotopy.moves import HomotopyCertificate, parse_moves
from morse.filtration import Ordering

logger = logging.getLogger(__name__)


def load_ordering(source: str, loaded: LoadedGraph) -> Ordering:
    """Resolve ``--ordering``.

    Accepts ``random:SEED``, ``natural``, ``metadata:NAME`` for an ordering
    attached to the graph, or a JSON file holding either a vertex list from
    lowest to highest or a vertex -> rank map.
    """
    graph = loaded.graph
    if source.startswith("random:"):
        try:
            seed = int(source.partition(":")[2])
        except ValueError:
            raise GraphFormatError(f"bad random ordering seed in {source!r}", "--ordering") from None
        return Ordering.random(graph, seed=seed)
    if source == "natural":
        return Ordering.natural(graph)
    if source.startswith("metadata:"):
        name = source.partition(":")[2]
        if name not in loaded.metadata.orderings:
            known = ", ".join(sorted(loaded.metadata.orderings)) or "none"
            raise GraphFormatError(f"no ordering named {name!r} (known: {known})", "--ordering")
        return Ordering.from_sequence(loaded.metadata.orderings[name]).validate(graph)
    payload = load_json_file(source)
    if isinstance(payload, list):
        return Ordering.from_sequence(payload).validate(graph)
    if isinstance(payload, dict):
        return Ordering.from_ranks(payload).validate(graph)
    raise GraphFormatError("ordering must be a list or a vertex -> rank map", f"{source} $")


def load_cover(path: str) -> Cover:
    return Cover.parse(load_json_file(path))


def metadata_covers(loaded: LoadedGraph) -> List[Cover]:
    return [Cover.from_documents(members) for _, members in sorted(loaded.metadata.covers.items())]


def load_certificate(path: str, start: Optional[SimpleGraph] = None) -> HomotopyCertificate:
    """Read a certificate file.

    A full certificate object is taken as is. A bare move list needs the
    start graph, which is then the command's input graph.
    """
    payload = load_json_file(path)
    try:
        if isinstance(payload, list):
            if start is None:
                raise GraphFormatError("a bare move list needs a start graph", f"{path} $")
            return HomotopyCertificate.build(start, parse_moves(payload))
        return HomotopyCertificate.model_validate(payload)
    except ValidationError as e:
        error = e.errors()[0]
        where = "$" + "".join(f"[{p}]" if isinstance(p, int) else f".{p}" for p in error["loc"])
        raise GraphFormatError(f"invalid certificate: {error['msg']}", f"{path} {where}") from None


def metadata_certificates(loaded: LoadedGraph) -> List[HomotopyCertificate]:
    certificates = []
    for name, moves in sorted(loaded.metadata.certificates.items()):
        try:
            certificates.append(HomotopyCertificate.build(loaded.graph, parse_moves(moves)))
        except ValidationError as e:
            logger.warning("Ignoring malformed certificate %r: %s", name, e.errors()[0]["msg"])
    return certificates
