"""CategoryEvaluator implementations.

Every evaluator memoizes by canonical certificate, since filtrations and
curvature averages ask for the same isomorphism types many times.
"""

import logging
from typing import Dict, Optional

from category.bounds import cat_bracket, tcat_bracket
from core import brackets
from core.brackets import CategoryBracket
from core.canonical import certificate
from core.category_evaluator import CategoryEvaluator
from core.fixtures import iter_fixture_samples
from core.graph import SimpleGraph
from homotopy.contractibility import ContractibilityCache, is_contractible
from homotopy.search import reduce

logger = logging.getLogger(__name__)


def _is_long_cycle(graph: SimpleGraph) -> bool:
    return graph.order >= 4 and graph.is_connected() and all(graph.degree(v) == 2 for v in graph.vertices)


class _Memoized(CategoryEvaluator):
    def __init__(self, cache: Optional[ContractibilityCache] = None, search_states: Optional[int] = None):
        self.cache = cache
        self.search_states = search_states
        self._memo: Dict[bytes, CategoryBracket] = {}

    def initialize(self) -> None:
        self._memo.clear()

    def evaluate(self, graph: SimpleGraph) -> CategoryBracket:
        if graph.order == 0:
            return CategoryBracket.point(0, brackets.TRIVIAL)
        key = certificate(graph)
        bracket = self._memo.get(key)
        if bracket is None:
            bracket = self._compute(graph)
            self._memo[key] = bracket
        return bracket

    def _compute(self, graph: SimpleGraph) -> CategoryBracket:
        raise NotImplementedError


class BracketEvaluator(_Memoized):
    """The general cat bracket pipeline."""

    name = "bracket"

    def _compute(self, graph: SimpleGraph) -> CategoryBracket:
        return cat_bracket(graph, cache=self.cache, search_states=self.search_states)


class TcatEvaluator(_Memoized):
    """tcat brackets, for the topological variant of the category index."""

    name = "tcat"

    def _compute(self, graph: SimpleGraph) -> CategoryBracket:
        return tcat_bracket(graph, cache=self.cache)


class ExactComponentsEvaluator(_Memoized):
    """Exact on graphs whose components are contractible or reduce to a cycle.

    A contractible component contributes 1. A component whose reduction is a
    cycle of length at least 4 contributes 2: cup length 2 below, the
    two-path cover of the cycle above. Anything else goes through the
    general bracket.
    """

    name = "exact-components"

    def _component(self, part: SimpleGraph) -> CategoryBracket:
        if is_contractible(part, self.cache):
            return CategoryBracket.point(1, brackets.CONTRACTIBILITY)
        if _is_long_cycle(reduce(part, self.cache).graph):
            return CategoryBracket(lower=2, upper=2, lower_method=brackets.CUP, upper_method=brackets.COVER)
        logger.debug("Component of %d vertices needs the general bracket", part.order)
        return cat_bracket(part, cache=self.cache, search_states=self.search_states)

    def _compute(self, graph: SimpleGraph) -> CategoryBracket:
        total = None
        for part in graph.components():
            bracket = self._component(graph.induced_subgraph(part))
            total = bracket if total is None else total + bracket
        return total


class FixtureTableEvaluator(_Memoized):
    """Looks graphs up among fixtures with a known category.

    Graphs not in the table are handed to ``fallback``, the general bracket
    when none is given.
    """

    name = "fixture-table"

    def __init__(
        self,
        fallback: Optional[CategoryEvaluator] = None,
        max_order: int = 10,
        cache: Optional[ContractibilityCache] = None,
        search_states: Optional[int] = None,
    ):
        super().__init__(cache, search_states)
        self.fallback = fallback or BracketEvaluator(cache, search_states)
        self.max_order = max_order
        self.table: Dict[bytes, CategoryBracket] = {}

    def initialize(self) -> None:
        super().initialize()
        self.fallback.initialize()
        self.table.clear()
        for sample in iter_fixture_samples(self.max_order):
            if sample.category is None:
                continue
            self.table[certificate(sample.graph)] = CategoryBracket.point(
                sample.category, brackets.FIXTURE_TABLE, fixture=sample.name
            )
        logger.info("Fixture table holds %d isomorphism types", len(self.table))

    def _compute(self, graph: SimpleGraph) -> CategoryBracket:
        found = self.table.get(certificate(graph))
        if found is not None:
            return found
        return self.fallback.evaluate(graph)


class AutoEvaluator(FixtureTableEvaluator):
    """Fixture table first, then the component rules, then the bracket."""

    name = "auto"

    def __init__(self, cache: Optional[ContractibilityCache] = None, search_states: Optional[int] = None):
        super().__init__(ExactComponentsEvaluator(cache, search_states), cache=cache, search_states=search_states)
