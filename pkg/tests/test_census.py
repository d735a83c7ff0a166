import networkx as nx
import pytest

import census.classification as classification
from census.classification import (
    CENSUS_BUDGET,
    PROVEN_DISTINCT,
    UNRESOLVED,
    classify_homotopy,
    profile,
    resolve_cell,
)
from census.enumeration import KNOWN_CONNECTED_COUNTS, check_order, count_connected, enumerate_connected
from cohomology.cup_length import cup_length
from core import brackets
from core.brackets import CategoryBracket
from core.canonical import are_isomorphic, certificate
from core.errors import SizeLimitError
from core.fixtures import cycle_graph
from core.graph import SimpleGraph
from core.graph_io import parse_graph6, serialize_graph6
from homotopy.search import Verdict, VerdictStatus


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_connected_counts(n):
    assert count_connected(n) == KNOWN_CONNECTED_COUNTS[n]


@pytest.mark.parametrize("n", [4, 5, 6])
def test_enumeration_matches_atlas(n):
    atlas = [
        SimpleGraph.from_networkx(g)
        for g in nx.graph_atlas_g()
        if g.number_of_nodes() == n and nx.is_connected(g)
    ]
    expected = {certificate(g) for g in atlas}
    found = [certificate(g) for g in enumerate_connected(n)]
    assert len(found) == len(set(found))
    assert set(found) == expected


@pytest.mark.slow
def test_order_seven_count():
    assert count_connected(7) == 853


def test_order_limits():
    with pytest.raises(SizeLimitError):
        check_order(8)
    check_order(8, long=True)
    with pytest.raises(SizeLimitError):
        check_order(9, long=True)
    assert list(enumerate_connected(0)) == []


def test_profile_of_cycle():
    record = profile(serialize_graph6(cycle_graph(5)))
    assert record.euler_characteristic == 0
    assert record.betti == [1, 1]
    assert record.cup == (2, 2)
    assert record.crit == 2
    assert not record.contractible
    assert are_isomorphic(parse_graph6(record.core), cycle_graph(5))


def test_cycle_cores_link():
    cores = [serialize_graph6(cycle_graph(4)), serialize_graph6(cycle_graph(5))]
    roots, links = resolve_cell(cores, CENSUS_BUDGET)
    assert len(set(roots.values())) == 1
    assert len(links) == 1


@pytest.mark.parametrize("n, expected", [(1, 1), (2, 1), (3, 1), (4, 2)])
def test_small_homotopy_counts(n, expected):
    report = classify_homotopy(n, threads=1)
    assert report.exact
    assert report.h == expected
    assert not report.discrepancy
    assert all(c.confidence == PROVEN_DISTINCT for c in report.classes)


def test_order_five_disagrees_with_published_count():
    report = classify_homotopy(5, threads=1, keep_records=True)
    assert report.graphs == 21
    assert report.h == 3
    assert report.published == 2
    assert report.discrepancy
    betti = sorted(c.betti for c in report.classes)
    assert betti == [[1], [1, 1], [1, 2]]
    assert sum(c.members for c in report.classes) == 21
    assert all(r.class_id >= 0 for r in report.records)


@pytest.mark.slow
def test_order_six_cells():
    report = classify_homotopy(6, threads=1)
    assert report.graphs == 112
    assert report.h_lower >= 6
    assert report.discrepancy


def _no_links(first, second, budget=None, cache=None, check_invariants=True):
    return Verdict(status=VerdictStatus.UNKNOWN, reason="links disabled")


def _cycle_classes(report):
    return [c for c in report.classes if c.betti == [1, 1]]


def test_inexact_cup_brackets_share_a_cell(monkeypatch):
    def loose(graph):
        return CategoryBracket(lower=1, upper=2 + graph.size, lower_method=brackets.TRIVIAL, upper_method=brackets.DEGREE)

    monkeypatch.setattr(classification, "cup_length", loose)
    report = classify_homotopy(4, threads=1, keep_records=True)
    assert report.h_lower == report.h_upper == 2
    assert all(c.cup is None for c in report.classes)
    assert all(c.confidence == PROVEN_DISTINCT for c in report.classes)
    assert all(r.exact_cup is None for r in report.records)


def test_unlinked_classes_with_equal_cups_stay_unresolved(monkeypatch):
    monkeypatch.setattr(classification, "homotopic_bounded", _no_links)
    report = classify_homotopy(5, threads=1)
    cycles = _cycle_classes(report)
    assert len(cycles) == 2
    assert all(c.cup == 2 for c in cycles)
    assert all(c.confidence == UNRESOLVED for c in cycles)
    assert report.h_lower == 3
    assert report.h_upper > report.h_lower
    assert report.h is None
    assert report.unresolved_cells >= 1


def test_different_exact_cups_separate_classes(monkeypatch):
    pentagon = cycle_graph(5)

    def pinned(graph):
        if are_isomorphic(graph, pentagon):
            return CategoryBracket(lower=3, upper=3, lower_method=brackets.CUP, upper_method=brackets.EXHAUSTIVE)
        return cup_length(graph)

    monkeypatch.setattr(classification, "cup_length", pinned)
    monkeypatch.setattr(classification, "homotopic_bounded", _no_links)
    report = classify_homotopy(5, threads=1)
    cycles = _cycle_classes(report)
    assert sorted(c.cup for c in cycles) == [2, 3]
    assert all(c.confidence == PROVEN_DISTINCT for c in cycles)
    assert report.h_lower == 4


def test_census_is_independent_of_threads():
    single = classify_homotopy(5, threads=1)
    pooled = classify_homotopy(5, threads=2)
    assert pooled.model_dump() == single.model_dump()
