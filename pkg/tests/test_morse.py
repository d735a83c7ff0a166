import pytest
from hypothesis import given, settings

from category.factory import EvaluatorMode, create_evaluator
from conftest import crit_by_enumeration, graphs, graphs_with_ordering
from core.cliques import euler_characteristic
from core.errors import GraphFormatError, NotMorseError, SizeLimitError, UnknownVertexError
from core.fixtures import complete_graph, cycle_graph, fixture, path_graph, wheel_graph
from core.graph import SimpleGraph
from morse.category_index import category_index_profile
from morse.crit import crit, crit_exact, crit_heuristic
from morse.filtration import Ordering, critical_points, index, index_profile
from morse.morse_functions import is_morse, morse_inequalities


# ============================================================================
# Orderings
# ============================================================================

def test_ordering_from_ranks_accepts_string_keys():
    ordering = Ordering.from_ranks({"3": 1, "1": 2, "2": 3})
    assert ordering.sequence == (3, 1, 2)
    assert ordering.to_ranks() == {"3": 1, "1": 2, "2": 3}


def test_ordering_rejects_repeats_and_gaps():
    with pytest.raises(GraphFormatError):
        Ordering.from_sequence([1, 2, 1])
    with pytest.raises(GraphFormatError):
        Ordering.from_ranks({"1": 1, "2": 1})
    with pytest.raises(GraphFormatError):
        Ordering.from_sequence([1, 2]).validate(path_graph(3))
    with pytest.raises(UnknownVertexError):
        Ordering.from_sequence([1, 2, 7]).validate(path_graph(3))


def test_random_ordering_is_reproducible():
    graph = wheel_graph(6)
    assert Ordering.random(graph, seed=4) == Ordering.random(graph, seed=4)
    assert sorted(Ordering.random(graph, seed=4).sequence) == list(graph.vertices)


# ============================================================================
# Poincare-Hopf
# ============================================================================

@pytest.mark.slow
@settings(max_examples=500, deadline=None)
@given(graphs_with_ordering(max_order=8))
def test_indices_telescope_to_sublevel_euler_characteristics(case):
    graph, sequence = case
    ordering = Ordering.from_sequence(sequence)
    profile = index_profile(graph, ordering, with_betti=False)
    running = 0
    for i, report in enumerate(profile):
        running += report.index
        assert running == euler_characteristic(graph.induced_subgraph(sequence[: i + 1]))
    assert running == euler_characteristic(graph)


def test_index_of_cycle_top_vertex():
    graph = cycle_graph(5)
    ordering = Ordering.natural(graph)
    assert index(graph, ordering, 1) == 1
    assert index(graph, ordering, 3) == 0
    # both neighbours below: two points, chi 2
    assert index(graph, ordering, 5) == -1


def test_minimum_is_critical():
    graph = path_graph(4)
    assert critical_points(graph, Ordering.from_sequence([2, 1, 3, 4])) == (2,)
    assert critical_points(graph, Ordering.from_sequence([1, 4, 2, 3])) == (1, 4, 3)


# ============================================================================
# Morse orderings
# ============================================================================

def test_icosahedron_height_is_morse():
    sample = fixture("icosahedron")
    ordering = Ordering.from_sequence(sample.metadata.orderings["height"])
    report = is_morse(sample.graph, ordering)
    assert report.morse
    assert report.counts == [1, 0, 1]
    assert [p.vertex for p in report.critical_points] == [1, 12]
    inequalities = morse_inequalities(sample.graph, ordering)
    assert inequalities.holds
    assert inequalities.betti == [1, 0, 1]
    assert [row.slack for row in inequalities.weak] == [0, 0, 0]


def test_figure8_centre_on_top_is_not_morse(figure8):
    ordering = Ordering.from_sequence(figure8.metadata.orderings["centre_max"])
    report = is_morse(figure8.graph, ordering)
    assert not report.morse
    centre = [p for p in report.critical_points if p.vertex == 1][0]
    assert centre.index == -3
    assert "not +-1" in centre.reason
    with pytest.raises(NotMorseError):
        morse_inequalities(figure8.graph, ordering)


def test_cycle_ordering_inequalities():
    graph = cycle_graph(6)
    ordering = Ordering.natural(graph)
    report = morse_inequalities(graph, ordering)
    assert report.counts == [1, 1]
    assert report.euler_holds
    assert report.holds


@settings(max_examples=80, deadline=None)
@given(graphs_with_ordering(max_order=7))
def test_morse_orderings_satisfy_the_inequalities(case):
    graph, sequence = case
    ordering = Ordering.from_sequence(sequence)
    if is_morse(graph, ordering).morse:
        assert morse_inequalities(graph, ordering).holds


# ============================================================================
# crit
# ============================================================================

@settings(max_examples=60, deadline=None)
@given(graphs(min_order=1, max_order=6))
def test_crit_matches_enumeration(graph):
    result = crit_exact(graph)
    assert result.value == crit_by_enumeration(graph)
    assert len(critical_points(graph, result.witness)) == result.value


@pytest.mark.parametrize(
    "graph, expected",
    [
        (complete_graph(5), 1),
        (wheel_graph(6), 1),
        (cycle_graph(7), 2),
        (fixture("figure8").graph, 3),
        (fixture("octahedron").graph, 2),
        (fixture("discrete_4").graph, 4),
    ],
    ids=["K5", "wheel6", "C7", "figure8", "octahedron", "discrete4"],
)
def test_crit_values(graph, expected):
    assert crit(graph).value == expected


@pytest.mark.slow
def test_crit_of_dunce_hat(dunce_hat):
    # contractible-like homology, yet every ordering needs three critical points
    assert crit(dunce_hat.graph).value == 3


@pytest.mark.slow
def test_crit_of_torus(torus16):
    assert crit(torus16.graph).value == 3


def test_crit_respects_dp_limit():
    with pytest.raises(SizeLimitError):
        crit_exact(cycle_graph(9), dp_limit=8)
    bound = crit(cycle_graph(9), dp_limit=8)
    assert not bound.exact
    assert bound.value >= 2


def test_heuristic_is_an_upper_bound(figure8):
    result = crit_heuristic(figure8.graph, restarts=30, seed=1)
    assert result.value >= 3
    assert len(critical_points(figure8.graph, result.witness)) == result.value


def test_empty_graph_has_no_critical_points():
    assert crit_exact(SimpleGraph.empty()).value == 0


@pytest.mark.parametrize("name", ["figure8", "octahedron"])
def test_crit_exact_is_independent_of_threads(name):
    graph = fixture(name).graph
    single = crit_exact(graph, threads=1)
    pooled = crit_exact(graph, threads=2)
    assert pooled.value == single.value
    assert pooled.witness == single.witness


# ============================================================================
# Category index
# ============================================================================

def test_category_index_on_cycle():
    graph = cycle_graph(5)
    evaluator = create_evaluator(EvaluatorMode.EXACT_COMPONENTS)
    profile = category_index_profile(graph, Ordering.natural(graph), evaluator)
    assert profile.values() == [1, 0, 0, 0, 1]
    assert profile.telescopes


def test_category_index_can_be_negative():
    graph = path_graph(3)
    evaluator = create_evaluator(EvaluatorMode.EXACT_COMPONENTS)
    profile = category_index_profile(graph, Ordering.from_sequence([1, 3, 2]), evaluator)
    assert profile.values() == [1, 1, -1]
    assert profile.total.value == 1
