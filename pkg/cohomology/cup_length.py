"""Cup products of cohomology classes and the cup length.

cup(G) = 1 + L, where L is the largest number of positive-degree classes
with a nonvanishing product. The lower bound is certified by an explicit
product that is not a coboundary. The upper bound is the degree bound, or the
longest length below it at which some product of basis representatives
survives, once every longer length up to the degree bound has been
enumerated in full and found to vanish.
"""

import logging
import random
from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import List, Optional, Sequence, Tuple

from cohomology.betti import CohomologyBasis, cohomology_basis
from cohomology.forms import Form, exterior_derivative
from cohomology.products import wedge_all
from core import brackets
from core.brackets import CategoryBracket
from core.config import get_settings
from core.errors import NonClosedFormError
from core.graph import SimpleGraph

logger = logging.getLogger(__name__)

# Basis products examined per length before switching to random combinations
MAX_BASIS_PRODUCTS = 4096


@dataclass(frozen=True)
class CupProduct:
    form: Form
    vanishes: bool


def cup_product(basis: CohomologyBasis, classes: Sequence[Form]) -> CupProduct:
    """Wedge of closed representatives, with an exact vanishing verdict.

    Raises:
        NonClosedFormError: a representative has nonzero exterior derivative
    """
    for i, form in enumerate(classes):
        if not exterior_derivative(form).is_zero():
            raise NonClosedFormError(f"representative {i} of degree {form.degree} is not closed")
    product = wedge_all(classes)
    return CupProduct(form=product, vanishes=basis.is_coboundary(product))


def max_factors_by_degree(basis: CohomologyBasis) -> int:
    """Largest m for which m positive degrees with nonzero H sum to a degree with nonzero H."""
    betti = basis.betti
    top = len(betti) - 1
    nonzero = {k for k in range(1, top + 1) if betti[k]}
    if not nonzero:
        return 0
    reachable = {0}
    best = 0
    for m in range(1, top + 1):
        reachable = {s + k for s in reachable for k in nonzero if s + k <= top}
        if not reachable:
            break
        if reachable & nonzero:
            best = m
    return best


def _random_combination(rng: random.Random, representatives: List[Form]) -> Form:
    total = Form.zero(representatives[0].complex, representatives[0].degree)
    for form in representatives:
        total = total + form * rng.randint(-3, 3)
    if total.is_zero():
        total = representatives[0]
    return total


def _degree_tuples(degrees: Sequence[int], length: int, top: int, nonzero: set) -> List[Tuple[int, ...]]:
    return [
        t for t in combinations_with_replacement(degrees, length) if sum(t) <= top and sum(t) in nonzero
    ]


def cup_length(
    graph: SimpleGraph,
    random_trials: Optional[int] = None,
    seed: Optional[int] = None,
    basis: Optional[CohomologyBasis] = None,
) -> CategoryBracket:
    """Bracket on cup(G), normally tight.

    Args:
        graph: The graph
        random_trials: Random class combinations per length when the basis
            enumeration is truncated
        seed: Seed for those combinations
        basis: A precomputed cohomology basis

    Returns:
        CategoryBracket: with the nonvanishing product as ``certificates['product']``
    """
    settings = get_settings()
    random_trials = settings.cup_random_trials if random_trials is None else random_trials
    seed = settings.seed if seed is None else seed
    if graph.order == 0:
        return CategoryBracket.point(0, brackets.TRIVIAL)
    basis = basis or cohomology_basis(graph)
    limit = max_factors_by_degree(basis)
    if limit == 0:
        return CategoryBracket.point(1, brackets.DEGREE)

    betti = basis.betti
    top = len(betti) - 1
    nonzero = {k for k in range(1, top + 1) if betti[k]}
    indexed = [(k, i) for k in basis.positive_degrees() for i in range(len(basis.representatives[k]))]
    found = 0
    certificate = None
    # Longest length whose products were only sampled and all vanished
    open_length = 0
    rng = random.Random(seed)
    for m in range(1, limit + 1):
        candidates = [
            c for c in combinations_with_replacement(indexed, m) if sum(k for k, _ in c) in nonzero
        ]
        truncated = len(candidates) > MAX_BASIS_PRODUCTS
        hit = None
        for combo in candidates[:MAX_BASIS_PRODUCTS]:
            forms = [basis.representatives[k][i] for k, i in combo]
            if not cup_product(basis, forms).vanishes:
                hit = [[k, i] for k, i in combo]
                break
        if hit is None:
            for degrees in _degree_tuples(basis.positive_degrees(), m, top, nonzero) if truncated else ():
                for _ in range(random_trials):
                    forms = [_random_combination(rng, basis.representatives[k]) for k in degrees]
                    if not cup_product(basis, forms).vanishes:
                        hit = {"degrees": list(degrees), "random_seed": seed}
                        break
                if hit is not None:
                    break
        if hit is None:
            # Longer products may still survive: wedge is not associative on cochains
            if truncated:
                open_length = m
            continue
        found, certificate = m, hit
        logger.debug("Nonvanishing product of %d classes: %s", m, hit)
    upper = max(found, open_length)
    upper_method = brackets.DEGREE if upper == limit else brackets.EXHAUSTIVE
    lower = found + 1
    bracket = CategoryBracket(
        lower=lower,
        upper=upper + 1,
        lower_method=brackets.CUP,
        upper_method=upper_method,
        certificates={"product": certificate} if certificate is not None else {},
    )
    if not bracket.exact:
        logger.warning("Cup length not closed: %s", bracket)
    return bracket
