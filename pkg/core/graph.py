"""Immutable finite simple graphs.

A ``SimpleGraph`` stores its vertices in ascending order together with a
frozen adjacency map. Search-heavy code works on *masks*: the tuple of
neighbour bitmasks indexed by vertex position, which is what induced-subgraph
and canonical-labeling helpers consume.
"""

from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

import networkx as nx

from core.errors import NonSimpleGraphError, UnknownVertexError

Edge = Tuple[int, int]
Masks = Tuple[int, ...]


class SimpleGraph:
    """A finite simple undirected graph with integer vertex identifiers."""

    __slots__ = ("_vertices", "_adjacency", "_index", "_edges")

    def __init__(self, adjacency: Mapping[int, Iterable[int]]):
        frozen: Dict[int, FrozenSet[int]] = {}
        for v, nbrs in adjacency.items():
            frozen[int(v)] = frozenset(int(u) for u in nbrs)
        for v, nbrs in frozen.items():
            if v in nbrs:
                raise NonSimpleGraphError(f"self-loop at vertex {v}")
            for u in nbrs:
                if u not in frozen or v not in frozen[u]:
                    raise NonSimpleGraphError(f"adjacency of {v} and {u} is not symmetric")
        self._vertices: Tuple[int, ...] = tuple(sorted(frozen))
        self._adjacency = frozen
        self._index: Optional[Dict[int, int]] = None
        self._edges: Optional[Tuple[Edge, ...]] = None

    # ------------------------------------------------------------------
    # Construction
    # ------------------------------------------------------------------

    @classmethod
    def from_edges(cls, edges: Iterable[Sequence[int]], vertices: Iterable[int] = ()) -> "SimpleGraph":
        """Build a graph from an edge list plus optional isolated vertices.

        Raises:
            NonSimpleGraphError: on a loop or a repeated edge
        """
        adjacency: Dict[int, set] = {int(v): set() for v in vertices}
        for edge in edges:
            u, v = int(edge[0]), int(edge[1])
            if u == v:
                raise NonSimpleGraphError(f"self-loop at vertex {u}")
            if v in adjacency.get(u, ()):
                raise NonSimpleGraphError(f"duplicate edge {min(u, v)}-{max(u, v)}")
            adjacency.setdefault(u, set()).add(v)
            adjacency.setdefault(v, set()).add(u)
        return cls(adjacency)

    @classmethod
    def from_masks(cls, masks: Sequence[int], labels: Optional[Sequence[int]] = None) -> "SimpleGraph":
        labels = list(range(len(masks))) if labels is None else list(labels)
        adjacency = {labels[i]: [labels[j] for j in _bits(masks[i])] for i in range(len(masks))}
        return cls(adjacency)

    @classmethod
    def from_networkx(cls, graph: nx.Graph) -> "SimpleGraph":
        return cls.from_edges(graph.edges(), graph.nodes())

    @classmethod
    def empty(cls) -> "SimpleGraph":
        return cls({})

    # ------------------------------------------------------------------
    # Accessors
    # ------------------------------------------------------------------

    @property
    def vertices(self) -> Tuple[int, ...]:
        return self._vertices

    @property
    def edges(self) -> Tuple[Edge, ...]:
        if self._edges is None:
            self._edges = tuple(
                (u, v) for u in self._vertices for v in sorted(self._adjacency[u]) if u < v
            )
        return self._edges

    @property
    def order(self) -> int:
        return len(self._vertices)

    @property
    def size(self) -> int:
        return len(self.edges)

    def __len__(self) -> int:
        return len(self._vertices)

    def __iter__(self) -> Iterator[int]:
        return iter(self._vertices)

    def __contains__(self, vertex: object) -> bool:
        return vertex in self._adjacency

    def neighbors(self, vertex: int) -> FrozenSet[int]:
        try:
            return self._adjacency[vertex]
        except KeyError:
            raise UnknownVertexError([vertex]) from None

    def degree(self, vertex: int) -> int:
        return len(self.neighbors(vertex))

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adjacency.get(u, ())

    @property
    def index(self) -> Dict[int, int]:
        """Position of each vertex in the ascending vertex tuple."""
        if self._index is None:
            self._index = {v: i for i, v in enumerate(self._vertices)}
        return self._index

    def masks(self) -> Masks:
        index = self.index
        result = []
        for v in self._vertices:
            m = 0
            for u in self._adjacency[v]:
                m |= 1 << index[u]
            result.append(m)
        return tuple(result)

    def mask_of(self, vertices: Iterable[int]) -> int:
        index = self.index
        m = 0
        for v in vertices:
            if v not in index:
                raise UnknownVertexError([v])
            m |= 1 << index[v]
        return m

    def vertices_of(self, mask: int) -> Tuple[int, ...]:
        return tuple(self._vertices[i] for i in _bits(mask))

    # ------------------------------------------------------------------
    # Derived graphs
    # ------------------------------------------------------------------

    def induced_subgraph(self, vertices: Iterable[int]) -> "SimpleGraph":
        keep = set(vertices)
        missing = keep.difference(self._adjacency)
        if missing:
            raise UnknownVertexError(missing)
        return SimpleGraph({v: self._adjacency[v] & keep for v in keep})

    def sphere(self, vertex: int) -> "SimpleGraph":
        return self.induced_subgraph(self.neighbors(vertex))

    def without(self, vertices: Iterable[int]) -> "SimpleGraph":
        drop = set(vertices)
        return self.induced_subgraph(v for v in self._vertices if v not in drop)

    def with_vertex(self, vertex: int, neighbors: Iterable[int]) -> "SimpleGraph":
        nbrs = set(neighbors)
        adjacency: Dict[int, set] = {v: set(n) for v, n in self._adjacency.items()}
        adjacency[vertex] = nbrs
        for u in nbrs:
            adjacency[u].add(vertex)
        return SimpleGraph(adjacency)

    def with_edge(self, u: int, v: int) -> "SimpleGraph":
        adjacency = {w: set(n) for w, n in self._adjacency.items()}
        adjacency[u].add(v)
        adjacency[v].add(u)
        return SimpleGraph(adjacency)

    def without_edge(self, u: int, v: int) -> "SimpleGraph":
        adjacency = {w: set(n) for w, n in self._adjacency.items()}
        adjacency[u].discard(v)
        adjacency[v].discard(u)
        return SimpleGraph(adjacency)

    def relabel(self, mapping: Mapping[int, int]) -> "SimpleGraph":
        return SimpleGraph({mapping[v]: [mapping[u] for u in n] for v, n in self._adjacency.items()})

    def normalized(self) -> "SimpleGraph":
        """Relabel vertices to 0..n-1 preserving their order."""
        return self.relabel(self.index)

    def components(self) -> List[FrozenSet[int]]:
        return [frozenset(self.vertices_of(m)) for m in components_of_masks(self.masks())]

    def is_connected(self) -> bool:
        return self.order > 0 and len(components_of_masks(self.masks())) == 1

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(self._vertices)
        graph.add_edges_from(self.edges)
        return graph

    # ------------------------------------------------------------------
    # Value semantics
    # ------------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SimpleGraph):
            return NotImplemented
        return self._adjacency == other._adjacency

    def __hash__(self) -> int:
        return hash((self._vertices, self.edges))

    def __repr__(self) -> str:
        return f"SimpleGraph(vertices={list(self._vertices)}, edges={[list(e) for e in self.edges]})"


def induced_subgraph(graph: SimpleGraph, vertices: Iterable[int]) -> SimpleGraph:
    """Subgraph generated by ``vertices``: all edges of ``graph`` inside the set."""
    return graph.induced_subgraph(vertices)


def sphere(graph: SimpleGraph, vertex: int) -> SimpleGraph:
    """Unit sphere S(x): the subgraph generated by the neighbours of ``vertex``."""
    return graph.sphere(vertex)


# ============================================================================
# Bitmask helpers
# ============================================================================

def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bit_positions(mask: int) -> List[int]:
    return list(_bits(mask))


def induced_masks(masks: Sequence[int], subset: int) -> Masks:
    """Masks of the subgraph generated by the positions in ``subset``, renumbered."""
    positions = list(_bits(subset))
    new_index = {p: i for i, p in enumerate(positions)}
    result = []
    for p in positions:
        m = 0
        for q in _bits(masks[p] & subset):
            m |= 1 << new_index[q]
        result.append(m)
    return tuple(result)


def components_of_masks(masks: Sequence[int], within: Optional[int] = None) -> List[int]:
    """Connected components, as masks, of the subgraph on ``within`` (default: all)."""
    remaining = (1 << len(masks)) - 1 if within is None else within
    components = []
    while remaining:
        seed = remaining & -remaining
        component = seed
        frontier = seed
        while frontier:
            low = frontier & -frontier
            frontier ^= low
            grow = masks[low.bit_length() - 1] & remaining & ~component
            component |= grow
            frontier |= grow
        components.append(component)
        remaining &= ~component
    return components


def is_connected_mask(masks: Sequence[int], within: int) -> bool:
    if within == 0:
        return False
    return len(components_of_masks(masks, within)) == 1
