"""Empirical checks of the algebra laws of forms.

Each check returns quietly when the law holds on the given forms and raises
``AlgebraLawError`` with the offending simplex otherwise. Exterior
derivative and graded commutativity hold exactly on cochains. Associativity
and the Leibniz rule are only checked, never assumed: the cyclic-average
wedge already breaks both on a single edge or triangle.
"""

import logging
from typing import Optional, Sequence

from cohomology.betti import CohomologyBasis
from cohomology.cup_length import cup_product
from cohomology.forms import Form, exterior_derivative
from cohomology.products import wedge
from core.errors import AlgebraLawError

logger = logging.getLogger(__name__)


def _first_difference(left: Form, right: Form) -> Optional[tuple]:
    for simplex in left.complex.simplices(left.degree):
        if left(*simplex) != right(*simplex):
            return simplex
    return None


def _require_equal(law: str, left: Form, right: Form) -> None:
    simplex = _first_difference(left, right)
    if simplex is not None:
        raise AlgebraLawError(
            f"{law} fails at {list(simplex)}: {left(*simplex)} != {right(*simplex)}"
        )


def check_nilpotent(form: Form) -> None:
    """d(d f) = 0."""
    twice = exterior_derivative(exterior_derivative(form))
    if not twice.is_zero():
        raise AlgebraLawError(f"d(d f) is nonzero on {list(twice.support[0])}")


def check_graded_commutative(f: Form, g: Form) -> None:
    """f ^ g = (-1)^(pq) g ^ f."""
    sign = -1 if (f.degree * g.degree) % 2 else 1
    _require_equal("graded commutativity", wedge(f, g), wedge(g, f) * sign)


def check_associative(f: Form, g: Form, h: Form) -> None:
    """(f ^ g) ^ h = f ^ (g ^ h)."""
    _require_equal("associativity", wedge(wedge(f, g), h), wedge(f, wedge(g, h)))


def check_leibniz(f: Form, g: Form) -> None:
    """d(f ^ g) = df ^ g + (-1)^p f ^ dg."""
    sign = -1 if f.degree % 2 else 1
    right = wedge(exterior_derivative(f), g) + wedge(f, exterior_derivative(g)) * sign
    _require_equal("Leibniz rule", exterior_derivative(wedge(f, g)), right)


def check_gauge_independence(
    basis: CohomologyBasis, classes: Sequence[Form], shifts: Sequence[Optional[Form]]
) -> None:
    """Replacing representatives by f + dh keeps the vanishing verdict of their product.

    ``shifts[i]`` is the form h added to ``classes[i]`` (``None`` leaves it alone).
    """
    moved = [
        form if shift is None else form + exterior_derivative(shift) for form, shift in zip(classes, shifts)
    ]
    before = cup_product(basis, classes).vanishes
    after = cup_product(basis, moved).vanishes
    if before != after:
        raise AlgebraLawError(f"cup product verdict changed from vanishes={before} to vanishes={after}")
    logger.debug("Gauge check kept vanishes=%s over %d classes", before, len(classes))
