"""Named example graphs with attached covers, orderings and certificates.

Parameterised families are addressed as ``family_n`` (``cycle_6``,
``wheel_5``). Labels follow the usual drawings: paths, cycles, complete and
discrete graphs use 1..n; stars and wheels put the hub at 0 and the rim on 1..n.
"""

import re
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from core.errors import FixtureNotFoundError
from core.graph import Edge, SimpleGraph
from core.graph_io import GraphMetadata, MemberDocument


@dataclass(frozen=True)
class Fixture:
    """A named graph plus its metadata.

    ``category`` is the value of cat(G) known for the graph, used by the
    table-lookup evaluator; ``None`` when no value is recorded.
    """

    name: str
    graph: SimpleGraph
    metadata: GraphMetadata = field(default_factory=GraphMetadata)
    category: Optional[int] = None


def _members(*vertex_sets: Sequence[int]) -> List[MemberDocument]:
    return [MemberDocument(vertices=sorted(s)) for s in vertex_sets]


# ============================================================================
# Families
# ============================================================================

def path_graph(n: int) -> SimpleGraph:
    return SimpleGraph.from_edges([(i, i + 1) for i in range(1, n)], range(1, n + 1))


def cycle_graph(n: int) -> SimpleGraph:
    if n < 3:
        raise FixtureNotFoundError(f"cycle_{n}: a cycle needs at least 3 vertices")
    return SimpleGraph.from_edges([(i, i % n + 1) for i in range(1, n + 1)])


def complete_graph(n: int) -> SimpleGraph:
    return SimpleGraph.from_edges(
        [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)], range(1, n + 1)
    )


def star_graph(n: int) -> SimpleGraph:
    return SimpleGraph.from_edges([(0, i) for i in range(1, n + 1)], [0])


def wheel_graph(n: int) -> SimpleGraph:
    if n < 3:
        raise FixtureNotFoundError(f"wheel_{n}: a wheel needs a rim of at least 3 vertices")
    rim = [(i, i % n + 1) for i in range(1, n + 1)]
    return SimpleGraph.from_edges(rim + [(0, i) for i in range(1, n + 1)])


def discrete_graph(n: int) -> SimpleGraph:
    return SimpleGraph.from_edges([], range(1, n + 1))


def cross_polytope(pairs: int) -> SimpleGraph:
    """Boundary of the cross-polytope: 2k vertices, all joined except antipodes."""
    n = 2 * pairs
    return SimpleGraph.from_edges(
        [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1) if not (i % 2 == 1 and j == i + 1)]
    )


# ============================================================================
# Named graphs
# ============================================================================

def octahedron() -> SimpleGraph:
    return cross_polytope(3)


def icosahedron() -> SimpleGraph:
    """Top 1, upper ring 2..6, lower ring 7..11, bottom 12."""
    upper = [2 + k for k in range(5)]
    lower = [7 + k for k in range(5)]
    edges: List[Tuple[int, int]] = []
    for k in range(5):
        edges.append((1, upper[k]))
        edges.append((upper[k], upper[(k + 1) % 5]))
        edges.append((upper[k], lower[k]))
        edges.append((upper[k], lower[(k + 1) % 5]))
        edges.append((lower[k], lower[(k + 1) % 5]))
        edges.append((lower[k], 12))
    return SimpleGraph.from_edges(edges)


def figure8() -> SimpleGraph:
    return SimpleGraph.from_edges([(1, 2), (2, 3), (3, 4), (4, 1), (1, 5), (5, 6), (6, 7), (7, 1)])


def torus16() -> SimpleGraph:
    """4x4 wraparound grid with one diagonal per square; vertex (i, j) is 4i+j+1."""

    def label(i: int, j: int) -> int:
        return 4 * (i % 4) + (j % 4) + 1

    edges = []
    for i in range(4):
        for j in range(4):
            edges.append((label(i, j), label(i, j + 1)))
            edges.append((label(i, j), label(i + 1, j)))
            edges.append((label(i, j), label(i + 1, j + 1)))
    return SimpleGraph.from_edges(edges)


# Circle neighbours of the ring vertices 6..15; together with the ring fans
# these glue the disk boundary along the word a.a.a^-1.
_DUNCE_FANS: Dict[int, Tuple[int, ...]] = {
    6: (1,),
    7: (1, 2, 3),
    8: (3, 4, 5),
    9: (5, 1, 2),
    10: (2, 3, 4),
    11: (4, 5, 1),
    12: (1,),
    13: (1, 5, 4),
    14: (4, 3, 2),
    15: (2, 1),
}


def dunce_hat() -> SimpleGraph:
    """Flag triangulation of the dunce hat on 16 vertices, f = (16, 50, 35).

    Circle 1..5 is the glued edge, ring 6..15 is coned to the centre 16.
    """
    edges = [(i, i % 5 + 1) for i in range(1, 6)]
    edges += [(r, r + 1 if r < 15 else 6) for r in range(6, 16)]
    edges += [(16, r) for r in range(6, 16)]
    for ring, circle in _DUNCE_FANS.items():
        edges += [(c, ring) for c in circle]
    return SimpleGraph.from_edges(edges)


# ============================================================================
# Registry
# ============================================================================

# Vertex sets as printed with the torus drawing; they miss edges such as 1-2
_TORUS_PUBLISHED = _members(
    (2, 3, 4, 6, 7, 8, 10, 11, 12),
    (5, 6, 8, 9, 10, 11, 13, 14, 15),
    (11, 12, 9, 15, 16, 13, 3, 4, 1),
)

# Four wraparound 3x3 blocks; every row pair and column pair of an edge
# lies in rows/columns {0, 1, 2} or {2, 3, 0}.
_TORUS_BLOCKS = _members(
    (1, 2, 3, 5, 6, 7, 9, 10, 11),
    (1, 3, 4, 5, 7, 8, 9, 11, 12),
    (1, 2, 3, 9, 10, 11, 13, 14, 15),
    (1, 3, 4, 9, 11, 12, 13, 15, 16),
)

# Edges inside the two triangle strips between rows 0-1 and columns 0-1.
# Without them the torus is a disk; the rest splits into two trees.
_TORUS_STRIP_TREES: Tuple[Tuple[Edge, ...], ...] = (
    ((1, 5), (1, 6), (2, 6), (2, 7), (3, 7), (3, 8), (4, 8), (2, 13), (13, 14), (9, 14), (9, 10)),
    ((4, 5), (5, 6), (2, 6), (1, 2), (5, 10)),
)


def _torus_in_itself() -> List[MemberDocument]:
    strips = {e for tree in _TORUS_STRIP_TREES for e in tree}
    disk = [e for e in torus16().edges if e not in strips]
    members = [MemberDocument(vertices=list(range(1, 17)), edges=disk)]
    for tree in _TORUS_STRIP_TREES:
        members.append(MemberDocument(vertices=sorted({v for e in tree for v in e}), edges=list(tree)))
    return members


def _named() -> Dict[str, Fixture]:
    return {
        "octahedron": Fixture("octahedron", octahedron(), category=2),
        "icosahedron": Fixture(
            "icosahedron",
            icosahedron(),
            GraphMetadata(orderings={"height": list(range(1, 13))}),
            category=2,
        ),
        "cross_polytope_3": Fixture(
            "cross_polytope_3",
            cross_polytope(4),
            GraphMetadata(notes=["three-sphere: f = (8, 24, 32, 16), chi = 0"]),
            category=2,
        ),
        "figure8": Fixture(
            "figure8",
            figure8(),
            GraphMetadata(
                covers={"paths": _members((1, 2, 3, 5, 6), (1, 3, 4, 6, 7))},
                orderings={"centre_max": [2, 3, 4, 5, 6, 7, 1]},
                certificates={
                    "theta": [
                        {"kind": "add_vertex", "vertex": 8, "over": [7, 1, 2]},
                        {"kind": "remove_edge", "u": 1, "v": 7},
                        {"kind": "remove_edge", "u": 1, "v": 8},
                    ]
                },
            ),
            category=2,
        ),
        "dunce_hat": Fixture(
            "dunce_hat",
            dunce_hat(),
            GraphMetadata(
                covers={
                    "in_itself": _members(
                        (1, 2, 5, 6, 7, 9, 11, 12, 13, 15),
                        tuple(range(6, 17)),
                        (2, 3, 4, 5, 7, 8, 10, 11, 13, 14),
                    )
                },
                orderings={"three_critical": [1, 2, 3, 4, 5, 8, 9, 10, 11, 12, 13, 14, 15, 6, 7, 16]},
                notes=[
                    "no vertex has a contractible sphere",
                    "add a certificate named 'to_collapsible' to close cat and cri to 1",
                ],
            ),
        ),
        "torus16": Fixture(
            "torus16",
            torus16(),
            GraphMetadata(
                covers={
                    "published": _TORUS_PUBLISHED,
                    "blocks": _TORUS_BLOCKS,
                    "in_itself": _torus_in_itself(),
                },
                orderings={"row_major": list(range(1, 17))},
                notes=[
                    "published covers the vertices only; it misses edges such as 1-2",
                    "in_itself is a disk plus two trees with explicit edges",
                    "no three induced contractible subgraphs cover every edge",
                ],
            ),
            category=3,
        ),
    }


def _cycle(n: int) -> Fixture:
    graph = cycle_graph(n)
    metadata = GraphMetadata(covers={"standard": _members(range(1, n), (n - 1, n, 1))})
    return Fixture(f"cycle_{n}", graph, metadata, category=1 if n == 3 else 2)


_FAMILIES: Dict[str, Callable[[int], Fixture]] = {
    "path": lambda n: Fixture(f"path_{n}", path_graph(n), category=1 if n else None),
    "cycle": _cycle,
    "complete": lambda n: Fixture(f"complete_{n}", complete_graph(n), category=1 if n else None),
    "star": lambda n: Fixture(f"star_{n}", star_graph(n), category=1),
    "wheel": lambda n: Fixture(f"wheel_{n}", wheel_graph(n), category=1),
    "discrete": lambda n: Fixture(f"discrete_{n}", discrete_graph(n), category=n if n else None),
}

_FAMILY_PATTERN = re.compile(r"^(?P<family>[a-z]+)_(?P<n>\d+)$")


def fixture(name: str) -> Fixture:
    """Look up a named or parameterised fixture.

    Raises:
        FixtureNotFoundError: unknown name or an out-of-range parameter
    """
    named = _named()
    if name in named:
        return named[name]
    match = _FAMILY_PATTERN.match(name)
    if match and match.group("family") in _FAMILIES:
        n = int(match.group("n"))
        if n > 64:
            raise FixtureNotFoundError(f"{name}: parameter above 64")
        return _FAMILIES[match.group("family")](n)
    raise FixtureNotFoundError(f"unknown fixture {name!r}; known: {', '.join(list_fixtures())}")


def list_fixtures() -> List[str]:
    return sorted(_named()) + [f"{family}_n" for family in _FAMILIES]


def iter_fixture_samples(max_order: int = 10) -> Iterator[Fixture]:
    """Every named fixture plus family members up to ``max_order`` vertices."""
    yield from _named().values()
    for family, build in _FAMILIES.items():
        low = 3 if family in ("cycle", "wheel") else 1
        for n in range(low, max_order + 1):
            yield build(n)
