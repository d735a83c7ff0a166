import pytest
from hypothesis import assume, given, settings, strategies as st

from cohomology.cup_length import cup_length
from conftest import graphs
from core.canonical import are_isomorphic
from core.cliques import euler_characteristic
from core.config import SearchBudget
from core.errors import CertificateError, MoveConditionError, UnknownVertexError
from core.fixtures import complete_graph, cycle_graph, fixture, path_graph, star_graph, wheel_graph
from core.graph import SimpleGraph
from homotopy.contractibility import ContractibilityCache, is_contractible, removable_vertices
from homotopy.moves import (
    AddEdge,
    AddVertex,
    HomotopyCertificate,
    RemoveEdge,
    RemoveVertex,
    apply_move,
    parse_moves,
    replay,
    verify_certificate,
)
from homotopy.search import (
    VerdictStatus,
    contractible_in,
    homotopic_bounded,
    reduce,
    separating_invariant,
    trimmed_betti,
)


# ============================================================================
# Contractibility
# ============================================================================

@pytest.mark.parametrize(
    "graph",
    [complete_graph(1), complete_graph(4), path_graph(5), star_graph(4), wheel_graph(5)],
    ids=["K1", "K4", "P5", "star4", "wheel5"],
)
def test_contractible_graphs(graph):
    result = is_contractible(graph)
    assert result
    assert sorted(result.witness) == list(graph.vertices)


def test_witness_replays_as_legal_removals():
    graph = wheel_graph(6)
    witness = is_contractible(graph).witness
    for vertex in witness[:-1]:
        graph = apply_move(graph, RemoveVertex(vertex=vertex))
    assert graph.vertices == (witness[-1],)


@pytest.mark.parametrize("n", [4, 5, 7])
def test_cycles_are_not_contractible(n):
    assert not is_contractible(cycle_graph(n))


def test_empty_graph_is_not_contractible():
    result = is_contractible(SimpleGraph.empty())
    assert not result
    assert result.witness is None


def test_dunce_hat_has_no_removable_vertex(dunce_hat):
    assert euler_characteristic(dunce_hat.graph) == 1
    assert removable_vertices(dunce_hat.graph) == frozenset()
    assert not is_contractible(dunce_hat.graph)


def test_cache_reuses_isomorphic_queries():
    cache = ContractibilityCache()
    assert is_contractible(wheel_graph(5), cache)
    hits = cache.hits
    relabeled = wheel_graph(5).relabel({v: v + 50 for v in range(6)})
    assert is_contractible(relabeled, cache)
    assert cache.hits > hits
    cache.clear()
    assert len(cache) == 0


# ============================================================================
# Moves and certificates
# ============================================================================

def test_wheel_centre_cannot_be_removed():
    with pytest.raises(MoveConditionError):
        apply_move(wheel_graph(4), RemoveVertex(vertex=0))
    smaller = apply_move(wheel_graph(4), RemoveVertex(vertex=1))
    assert smaller.order == 4


def test_pyramid_needs_contractible_base():
    graph = cycle_graph(4)
    with pytest.raises(MoveConditionError):
        apply_move(graph, AddVertex(vertex=9, over=[1, 3]))
    with pytest.raises(MoveConditionError):
        apply_move(graph, AddVertex(vertex=2, over=[1]))
    grown = apply_move(graph, AddVertex(vertex=9, over=[1, 2]))
    assert grown.neighbors(9) == frozenset({1, 2})


def test_edge_moves_need_contractible_common_sphere():
    graph = cycle_graph(5)
    # 1 and 3 share only 2
    assert apply_move(graph, AddEdge(u=1, v=3)).has_edge(1, 3)
    # adjacent cycle vertices share nothing
    with pytest.raises(MoveConditionError):
        apply_move(graph, RemoveEdge(u=1, v=2))
    with pytest.raises(UnknownVertexError):
        apply_move(graph, AddEdge(u=1, v=42))


def test_theta_certificate_tracks_marked_loop(figure8):
    raw = figure8.metadata.certificates["theta"]
    certificate = HomotopyCertificate.build(figure8.graph, parse_moves(raw), marked=[1, 2, 3, 4])
    result = replay(certificate)
    assert result.steps == 3
    assert result.graph.order == 8
    assert euler_characteristic(result.graph) == -1
    assert result.marked == frozenset({1, 2, 3, 4, 8})


def test_bad_certificate_reports_step(figure8):
    certificate = HomotopyCertificate.build(figure8.graph, [RemoveEdge(u=1, v=3)])
    with pytest.raises(CertificateError) as excinfo:
        verify_certificate(certificate)
    assert excinfo.value.step == 1


def test_certificate_round_trips_through_json(figure8):
    raw = figure8.metadata.certificates["theta"]
    certificate = HomotopyCertificate.build(figure8.graph, parse_moves(raw))
    parsed = HomotopyCertificate.model_validate_json(certificate.model_dump_json())
    assert verify_certificate(parsed) == verify_certificate(certificate)


_move_kinds = st.sampled_from(["remove_vertex", "add_vertex", "add_edge", "remove_edge"])


@pytest.mark.slow
@settings(max_examples=1000, deadline=None)
@given(st.data())
def test_legal_moves_preserve_invariants(data):
    graph = data.draw(graphs(min_order=2, max_order=6, connected=True))
    chi, betti = euler_characteristic(graph), trimmed_betti(graph)
    cup = cup_length(graph)
    applied = 0
    for _ in range(4):
        kind = data.draw(_move_kinds)
        vertices = list(graph.vertices)
        if kind == "remove_vertex":
            move = RemoveVertex(vertex=data.draw(st.sampled_from(vertices)))
        elif kind == "add_vertex":
            over = data.draw(st.lists(st.sampled_from(vertices), min_size=1, unique=True))
            move = AddVertex(vertex=max(vertices) + 1, over=over)
        elif len(vertices) < 2:
            continue
        else:
            u, v = data.draw(st.lists(st.sampled_from(vertices), min_size=2, max_size=2, unique=True))
            move = AddEdge(u=u, v=v) if kind == "add_edge" else RemoveEdge(u=u, v=v)
        try:
            graph = apply_move(graph, move)
        except MoveConditionError:
            continue
        applied += 1
    assume(applied > 0)
    assert euler_characteristic(graph) == chi
    assert trimmed_betti(graph) == betti
    after = cup_length(graph)
    if cup.exact and after.exact:
        assert after.value == cup.value


# ============================================================================
# Reduction and search
# ============================================================================

def test_reduce_collapses_wheel():
    reduction = reduce(wheel_graph(5))
    assert reduction.graph.order == 1
    assert verify_certificate(reduction.certificate) == reduction.graph


def test_reduce_keeps_figure8(figure8):
    assert reduce(figure8.graph).graph.order == 7


def test_reduce_drops_pendant_vertex():
    graph = cycle_graph(4).with_vertex(5, [1])
    assert are_isomorphic(reduce(graph).graph, cycle_graph(4))


def test_cycles_of_different_length_are_homotopic():
    verdict = homotopic_bounded(cycle_graph(4), cycle_graph(5))
    assert verdict.status == VerdictStatus.EQUIVALENT
    end = verify_certificate(verdict.certificate)
    assert are_isomorphic(end, cycle_graph(5))


def test_invariant_separates_cycle_from_triangle():
    verdict = homotopic_bounded(cycle_graph(4), complete_graph(3))
    assert verdict.distinct
    assert verdict.witness.invariant == "euler_characteristic"


def test_betti_separates_when_chi_agrees():
    # circle plus a point against a point: both have chi 1
    circle_and_point = cycle_graph(4).with_vertex(9, [])
    witness = separating_invariant(circle_and_point, complete_graph(1))
    assert witness.invariant == "betti"
    assert witness.left == [2, 1]
    assert witness.right == [1]


def test_exhausted_state_budget_is_unknown():
    verdict = homotopic_bounded(cycle_graph(4), cycle_graph(6), budget=SearchBudget(max_states=2))
    assert verdict.status == VerdictStatus.UNKNOWN
    assert verdict.certificate is None


def test_wheel_rim_is_contractible_in_wheel():
    verdict = contractible_in([1, 2, 3, 4], wheel_graph(4))
    assert verdict.equivalent
    assert verdict.reason == "image shrinks to a vertex"
    result = replay(verdict.certificate)
    assert len(result.marked) == 1


def test_contractible_member_needs_no_search(figure8):
    verdict = contractible_in([1, 2, 3, 5, 6], figure8.graph)
    assert verdict.equivalent
    assert verdict.reason == "contractible in itself"


def test_cycle_is_not_contractible_in_itself():
    verdict = contractible_in([1, 2, 3, 4], cycle_graph(4))
    assert verdict.distinct


def test_member_outside_graph():
    with pytest.raises(UnknownVertexError):
        contractible_in([1, 99], cycle_graph(4))
