"""Orderings, sublevel graphs and Poincare-Hopf indices.

An injective function f on the vertices only matters through the order it
induces, so it is represented by the vertex sequence from lowest to highest.
"""

import logging
import random
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from pydantic import BaseModel

from core.cliques import euler_characteristic, fvector
from core.errors import GraphFormatError, UnknownVertexError
from core.graph import SimpleGraph
from homotopy.contractibility import ContractibilityCache, is_contractible

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Ordering:
    """Vertices listed from the lowest to the highest function value."""

    sequence: Tuple[int, ...]

    @classmethod
    def from_sequence(cls, vertices: Sequence[int]) -> "Ordering":
        sequence = tuple(int(v) for v in vertices)
        if len(set(sequence)) != len(sequence):
            raise GraphFormatError("ordering repeats a vertex")
        return cls(sequence)

    @classmethod
    def from_ranks(cls, ranks: Mapping) -> "Ordering":
        """Build from a vertex -> rank map (JSON keys may be strings)."""
        pairs = sorted(((int(r), int(v)) for v, r in ranks.items()))
        values = [r for r, _ in pairs]
        if len(set(values)) != len(values):
            raise GraphFormatError("ordering assigns the same rank twice")
        return cls.from_sequence([v for _, v in pairs])

    @classmethod
    def natural(cls, graph: SimpleGraph) -> "Ordering":
        return cls(graph.vertices)

    @classmethod
    def random(cls, graph: SimpleGraph, seed: Optional[int] = None, rng: Optional[random.Random] = None) -> "Ordering":
        rng = rng or random.Random(seed)
        sequence = list(graph.vertices)
        rng.shuffle(sequence)
        return cls(tuple(sequence))

    @property
    def rank(self) -> Dict[int, int]:
        """1-based rank of each vertex."""
        return {v: i + 1 for i, v in enumerate(self.sequence)}

    def to_ranks(self) -> Dict[str, int]:
        return {str(v): r for v, r in self.rank.items()}

    def validate(self, graph: SimpleGraph) -> "Ordering":
        if set(self.sequence) != set(graph.vertices) or len(self.sequence) != graph.order:
            missing = set(graph.vertices) - set(self.sequence)
            extra = set(self.sequence) - set(graph.vertices)
            if extra:
                raise UnknownVertexError(extra)
            raise GraphFormatError(f"ordering misses vertices {sorted(missing)}")
        return self

    def below(self, vertex: int) -> Tuple[int, ...]:
        return self.sequence[: self.sequence.index(vertex)]

    def __len__(self) -> int:
        return len(self.sequence)


def sublevel_graph(graph: SimpleGraph, ordering: Ordering, vertex: int) -> SimpleGraph:
    """Subgraph generated by the vertices strictly below ``vertex``."""
    if vertex not in graph:
        raise UnknownVertexError([vertex])
    return graph.induced_subgraph(ordering.below(vertex))


def minus_sphere(graph: SimpleGraph, ordering: Ordering, vertex: int) -> SimpleGraph:
    """S^-_f(x): neighbours of ``vertex`` strictly below it."""
    lower = set(ordering.below(vertex))
    return graph.induced_subgraph(graph.neighbors(vertex) & lower)


def index(graph: SimpleGraph, ordering: Ordering, vertex: int) -> int:
    """i_f(x) = 1 - chi(S^-_f(x))."""
    return 1 - euler_characteristic(minus_sphere(graph, ordering, vertex))


class VertexIndexReport(BaseModel):
    vertex: int
    minus_sphere_fvector: List[int]
    index: int
    critical: bool
    betti_change: Optional[List[int]] = None
    category_index: Optional[Tuple[int, int]] = None


def _difference(after: Sequence[int], before: Sequence[int]) -> List[int]:
    width = max(len(after), len(before))
    a = list(after) + [0] * (width - len(after))
    b = list(before) + [0] * (width - len(before))
    return [x - y for x, y in zip(a, b)]


def index_profile(
    graph: SimpleGraph,
    ordering: Ordering,
    with_betti: bool = True,
    cache: Optional[ContractibilityCache] = None,
) -> List[VertexIndexReport]:
    """Per-vertex index reports in increasing order of f.

    Prefix sums of the indices equal the Euler characteristic of each
    sublevel graph (Poincare-Hopf).
    """
    from cohomology.betti import betti

    ordering.validate(graph)
    reports = []
    previous_betti: Tuple[int, ...] = ()
    for i, x in enumerate(ordering.sequence):
        sphere = minus_sphere(graph, ordering, x)
        change = None
        if with_betti:
            current = betti(graph.induced_subgraph(ordering.sequence[: i + 1]))
            change = _difference(current, previous_betti)
            previous_betti = current
        reports.append(
            VertexIndexReport(
                vertex=x,
                minus_sphere_fvector=list(fvector(sphere)),
                index=1 - euler_characteristic(sphere),
                critical=not is_contractible(sphere, cache),
                betti_change=change,
            )
        )
    return reports


def critical_points(
    graph: SimpleGraph, ordering: Ordering, cache: Optional[ContractibilityCache] = None
) -> Tuple[int, ...]:
    """Vertices whose minus-sphere is empty or not contractible, in f-order."""
    ordering.validate(graph)
    return tuple(x for x in ordering.sequence if not is_contractible(minus_sphere(graph, ordering, x), cache))
