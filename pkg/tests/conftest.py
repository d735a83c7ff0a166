import os
import sys
from itertools import permutations

import pytest
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from cohomology.forms import Form  # noqa: E402
from core.config import reset_settings  # noqa: E402
from core.fixtures import fixture  # noqa: E402
from core.graph import SimpleGraph  # noqa: E402
from morse.filtration import Ordering, critical_points  # noqa: E402


@st.composite
def graphs(draw, min_order: int = 1, max_order: int = 7, connected: bool = False) -> SimpleGraph:
    """Random simple graph on vertices 0..n-1; connected graphs grow from a random tree."""
    n = draw(st.integers(min_order, max_order))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = set()
    if connected:
        for v in range(1, n):
            chosen.add((draw(st.integers(0, v - 1)), v))
    flags = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    chosen.update(p for p, keep in zip(pairs, flags) if keep)
    return SimpleGraph.from_edges(sorted(chosen), range(n))


@st.composite
def graphs_with_ordering(draw, min_order: int = 1, max_order: int = 8, connected: bool = False):
    graph = draw(graphs(min_order, max_order, connected))
    return graph, draw(st.permutations(list(graph.vertices)))


@st.composite
def relabelings(draw, graph: SimpleGraph):
    targets = draw(st.permutations([v + 100 for v in graph.vertices]))
    return dict(zip(graph.vertices, targets))


def crit_by_enumeration(graph: SimpleGraph) -> int:
    """crit over all n! orderings."""
    return min(len(critical_points(graph, Ordering.from_sequence(p))) for p in permutations(graph.vertices))


def random_form(data, complex, degree: int, low: int = -3, high: int = 3) -> Form:
    """Small-integer form of a given degree, drawn through ``st.data()``."""
    width = len(complex.simplices(degree))
    values = data.draw(st.lists(st.integers(low, high), min_size=width, max_size=width))
    return Form.from_vector(complex, degree, values)


@pytest.fixture(autouse=True)
def clean_settings():
    """Keeps CLI overrides from leaking between tests."""
    reset_settings()
    yield
    reset_settings()


@pytest.fixture
def figure8():
    return fixture("figure8")


@pytest.fixture
def torus16():
    return fixture("torus16")


@pytest.fixture
def dunce_hat():
    return fixture("dunce_hat")


@pytest.fixture
def octahedron():
    return fixture("octahedron").graph
