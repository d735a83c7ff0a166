"""Category index k_f(x) = cat(G_f(x)) - cat(G_f below x) along a filtration.

With an exact evaluator the indices telescope to cat(G). Otherwise each
index is an interval from bracket subtraction.
"""

import logging
from typing import List, Optional, Tuple

from pydantic import BaseModel

from core.brackets import CategoryBracket
from core.category_evaluator import CategoryEvaluator
from core.graph import SimpleGraph
from morse.filtration import Ordering

logger = logging.getLogger(__name__)


class CategoryIndexEntry(BaseModel):
    vertex: int
    lower: int
    upper: int

    @property
    def exact(self) -> bool:
        return self.lower == self.upper


class CategoryIndexProfile(BaseModel):
    evaluator: str
    entries: List[CategoryIndexEntry]
    total: CategoryBracket

    @property
    def exact(self) -> bool:
        return all(e.exact for e in self.entries)

    @property
    def telescopes(self) -> bool:
        """Sum of exact indices equals the exact category of the whole graph."""
        if not self.exact or not self.total.exact:
            return False
        return sum(e.lower for e in self.entries) == self.total.lower

    def values(self) -> Optional[List[int]]:
        return [e.lower for e in self.entries] if self.exact else None


def category_index_profile(
    graph: SimpleGraph, ordering: Ordering, evaluator: CategoryEvaluator
) -> CategoryIndexProfile:
    """Per-vertex category index along ``ordering``.

    The evaluator decides the flavour: a cat evaluator gives k_f, a tcat
    bracket evaluator gives the topological-category variant.
    """
    ordering.validate(graph)
    entries = []
    previous: Tuple[int, int] = (0, 0)
    bracket = CategoryBracket.point(0, "empty")
    for i, x in enumerate(ordering.sequence):
        bracket = evaluator.evaluate(graph.induced_subgraph(ordering.sequence[: i + 1]))
        entries.append(
            CategoryIndexEntry(vertex=x, lower=bracket.lower - previous[1], upper=bracket.upper - previous[0])
        )
        previous = (bracket.lower, bracket.upper)
    profile = CategoryIndexProfile(evaluator=evaluator.name, entries=entries, total=bracket)
    if not profile.exact:
        logger.debug("Category index along %d vertices is only bracketed", len(entries))
    return profile
