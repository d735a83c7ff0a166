from abc import ABC, abstractmethod

from core.brackets import CategoryBracket
from core.graph import SimpleGraph


class CategoryEvaluator(ABC):
    """Abstract base class for anything that bounds cat(G).

    Implementations range from exact rules for special families to bracket
    pipelines and table lookups. The filtration-based category index and the
    category curvature only talk to this interface.
    """

    name: str = "abstract"

    @abstractmethod
    def initialize(self) -> None:
        """Build lookup tables or warm caches.

        Called once after instantiation so that expensive setup can fail
        early and be skipped by callers that never evaluate anything.
        """
        pass

    @abstractmethod
    def evaluate(self, graph: SimpleGraph) -> CategoryBracket:
        """Return certified bounds on cat(graph).

        Args:
            graph: Any finite simple graph, possibly empty or disconnected.
                The empty graph has category 0.

        Returns:
            CategoryBracket: exact when lower == upper
        """
        pass

    def is_exact_on(self, graph: SimpleGraph) -> bool:
        return self.evaluate(graph).exact
