"""Factory for category evaluators.

Picks the evaluator implementation for a mode name, as used by the CLI,
the category index and the category curvature.
"""

from enum import Enum
from typing import Optional

from category.evaluators import (
    AutoEvaluator,
    BracketEvaluator,
    ExactComponentsEvaluator,
    FixtureTableEvaluator,
    TcatEvaluator,
)
from core.category_evaluator import CategoryEvaluator
from homotopy.contractibility import ContractibilityCache


class EvaluatorMode(Enum):
    """Enum for the available evaluators."""
    EXACT_COMPONENTS = "exact-components"
    BRACKET = "bracket"
    FIXTURE_TABLE = "fixture-table"
    TCAT = "tcat"
    AUTO = "auto"  # Default


def create_evaluator(
    mode: EvaluatorMode = EvaluatorMode.AUTO,
    cache: Optional[ContractibilityCache] = None,
    initialize: bool = True,
) -> CategoryEvaluator:
    """Create a category evaluator for the given mode.

    Args:
        mode: Which evaluator to use (defaults to AUTO)
        cache: Contractibility cache shared by the evaluator
        initialize: Build lookup tables before returning

    Returns:
        CategoryEvaluator: The evaluator
    """
    if mode == EvaluatorMode.EXACT_COMPONENTS:
        evaluator = ExactComponentsEvaluator(cache)
    elif mode == EvaluatorMode.BRACKET:
        evaluator = BracketEvaluator(cache)
    elif mode == EvaluatorMode.FIXTURE_TABLE:
        evaluator = FixtureTableEvaluator(cache=cache)
    elif mode == EvaluatorMode.TCAT:
        evaluator = TcatEvaluator(cache)
    else:
        evaluator = AutoEvaluator(cache)
    if initialize:
        evaluator.initialize()
    return evaluator
