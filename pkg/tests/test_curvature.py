from fractions import Fraction

import pytest
from hypothesis import given, settings

from category.factory import EvaluatorMode, create_evaluator
from conftest import graphs
from core.cliques import euler_characteristic
from core.errors import SizeLimitError
from core.fixtures import complete_graph, cycle_graph, fixture, path_graph, star_graph
from curvature.curvatures import (
    BRACKET,
    EXACT,
    MONTE_CARLO,
    betti_curvature,
    category_curvature,
    euler_curvature,
)


@pytest.fixture(scope="module")
def auto_evaluator():
    return create_evaluator(EvaluatorMode.AUTO)


# ============================================================================
# Euler curvature
# ============================================================================

def test_cycle_is_flat():
    report = euler_curvature(cycle_graph(6))
    assert report.method == EXACT
    assert set(report.values().values()) == {0}


def test_path_curvature_sits_on_the_endpoints():
    values = euler_curvature(path_graph(5)).values()
    assert values[1] == values[5] == Fraction(1, 2)
    assert values[3] == 0


def test_octahedron_vertices_share_chi(octahedron):
    values = euler_curvature(octahedron).values()
    assert set(values.values()) == {Fraction(1, 3)}


@pytest.mark.slow
@settings(max_examples=500, deadline=None)
@given(graphs(max_order=10))
def test_gauss_bonnet(graph):
    assert euler_curvature(graph).total() == euler_characteristic(graph)


def test_sampled_euler_curvature_still_sums_to_chi():
    graph = fixture("icosahedron").graph
    report = euler_curvature(graph, degree_cap=0, samples=300, seed=7)
    assert report.method == MONTE_CARLO
    assert report.samples == 300
    assert sum(e.mean for e in report.entries) == pytest.approx(euler_characteristic(graph))
    assert all(e.radius is not None for e in report.entries)


# ============================================================================
# Betti curvature
# ============================================================================

def test_betti_curvature_of_cycle():
    for k, total in ((0, 1), (1, 1)):
        report = betti_curvature(cycle_graph(5), k)
        assert set(report.values().values()) == {Fraction(1, 5)}
        assert report.total() == total


def test_betti_curvature_of_star():
    report = betti_curvature(star_graph(3), 0)
    assert report.values()[0] == Fraction(-1, 2)
    assert report.total() == 1


def test_exact_betti_curvature_refuses_large_graphs():
    with pytest.raises(SizeLimitError):
        betti_curvature(cycle_graph(10), 1, method="exact")


def test_sampled_betti_curvature_is_reproducible():
    graph = cycle_graph(10)
    first = betti_curvature(graph, 1, method="mc:200", seed=3)
    second = betti_curvature(graph, 1, method="mc:200", seed=3)
    assert first.method == MONTE_CARLO
    assert [e.mean for e in first.entries] == [e.mean for e in second.entries]
    assert sum(e.mean for e in first.entries) == pytest.approx(1)


def test_sampled_betti_curvature_is_independent_of_threads():
    graph = cycle_graph(10)
    single = betti_curvature(graph, 1, method="mc:600", seed=5, threads=1)
    pooled = betti_curvature(graph, 1, method="mc:600", seed=5, threads=2)
    assert [e.mean for e in pooled.entries] == [e.mean for e in single.entries]
    assert [e.radius for e in pooled.entries] == [e.radius for e in single.entries]


def test_unknown_method():
    with pytest.raises(ValueError):
        betti_curvature(cycle_graph(4), 0, method="simpson")


# ============================================================================
# Category curvature
# ============================================================================

@pytest.mark.parametrize(
    "graph, expected",
    [
        (cycle_graph(5), Fraction(2, 5)),
        (cycle_graph(8), Fraction(1, 4)),
        (complete_graph(4), Fraction(1, 4)),
        (fixture("octahedron").graph, Fraction(1, 3)),
        (fixture("cross_polytope_3").graph, Fraction(1, 4)),
    ],
    ids=["C5", "C8", "K4", "octahedron", "cross_polytope_3"],
)
def test_category_curvature_of_vertex_transitive_graphs(graph, expected, auto_evaluator):
    report = category_curvature(graph, auto_evaluator)
    assert report.method == EXACT
    assert set(report.values().values()) == {expected}


def test_category_curvature_of_path(auto_evaluator):
    values = category_curvature(path_graph(3), auto_evaluator).values()
    assert values == {1: Fraction(1, 2), 2: 0, 3: Fraction(1, 2)}


def test_category_curvature_sums_to_category(auto_evaluator):
    graph = fixture("figure8").graph
    report = category_curvature(graph, auto_evaluator)
    if report.method == EXACT:
        assert report.total() == 2
    else:
        assert report.method == BRACKET or report.method == "mixed"
        assert sum(e.lower if e.value is None else e.value for e in report.entries) <= 2


@pytest.mark.slow
def test_icosahedron_category_curvature(auto_evaluator):
    report = category_curvature(fixture("icosahedron").graph, auto_evaluator, exact_limit=12)
    for entry in report.entries:
        if entry.value is not None:
            assert entry.value == Fraction(1, 6)
        else:
            assert entry.lower <= Fraction(1, 6) <= entry.upper


def test_sampled_category_curvature(auto_evaluator):
    report = category_curvature(cycle_graph(9), auto_evaluator, method="mc:150", seed=2)
    assert report.method == MONTE_CARLO
    assert sum(e.mean for e in report.entries) == pytest.approx(2)


def test_sampled_category_curvature_is_independent_of_threads(auto_evaluator):
    graph = cycle_graph(9)
    single = category_curvature(graph, auto_evaluator, method="mc:500", seed=4, threads=1)
    pooled = category_curvature(graph, auto_evaluator, method="mc:500", seed=4, threads=2)
    assert [e.mean for e in pooled.entries] == [e.mean for e in single.entries]
    assert sum(e.mean for e in pooled.entries) == pytest.approx(2)
