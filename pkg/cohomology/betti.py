"""Betti numbers and cohomology bases over the rationals."""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

import numpy as np

from cohomology.forms import Form
from core.cliques import CliqueComplex, cliques
from core.graph import SimpleGraph
from tools.rational_linalg import ExactLinearAlgebra, as_integer_vector

logger = logging.getLogger(__name__)


def coboundary_matrix(complex: CliqueComplex, k: int) -> np.ndarray:
    """Matrix of d_k: rows index (k+1)-simplices, columns k-simplices."""
    rows = complex.simplices(k + 1)
    cols = complex.simplices(k)
    matrix = np.zeros((len(rows), len(cols)), dtype=object)
    for i, simplex in enumerate(rows):
        for j in range(k + 2):
            face = simplex[:j] + simplex[j + 1:]
            matrix[i, complex.position(face)] = 1 if j % 2 == 0 else -1
    return matrix


def _ranks(complex: CliqueComplex) -> List[int]:
    return [ExactLinearAlgebra.rank(coboundary_matrix(complex, k)) for k in range(complex.dimension + 1)]


def betti_of_complex(complex: CliqueComplex) -> Tuple[int, ...]:
    ranks = _ranks(complex)
    fvector = complex.fvector
    return tuple(
        fvector[k] - ranks[k] - (ranks[k - 1] if k > 0 else 0) for k in range(len(fvector))
    )


def betti(graph: SimpleGraph) -> Tuple[int, ...]:
    """(b_0, ..., b_d) up to the top clique dimension d; empty for the empty graph."""
    return betti_of_complex(cliques(graph))


def poincare_polynomial(graph: SimpleGraph) -> Tuple[int, ...]:
    """Coefficients of p(t) = sum_k b_k t^k."""
    return betti(graph)


def format_polynomial(coefficients: Tuple[int, ...], variable: str = "t") -> str:
    terms = []
    for k, c in enumerate(coefficients):
        if c == 0:
            continue
        if k == 0:
            terms.append(str(c))
        else:
            power = variable if k == 1 else f"{variable}^{k}"
            terms.append(power if c == 1 else f"{c}{power}")
    return " + ".join(terms) or "0"


@dataclass
class CohomologyBasis:
    """Closed representatives spanning each H^k, plus coboundary queries."""

    complex: CliqueComplex
    representatives: Dict[int, List[Form]]
    _images: Dict[int, np.ndarray] = field(default_factory=dict, repr=False)
    _image_ranks: Dict[int, int] = field(default_factory=dict, repr=False)

    @property
    def betti(self) -> Tuple[int, ...]:
        return tuple(len(self.representatives.get(k, [])) for k in range(self.complex.dimension + 1))

    def image_matrix(self, k: int) -> np.ndarray:
        """Columns spanning im(d_{k-1}) inside the k-cochains."""
        if k not in self._images:
            if k == 0:
                matrix = np.zeros((len(self.complex.simplices(0)), 0), dtype=object)
            else:
                matrix = coboundary_matrix(self.complex, k - 1)
            self._images[k] = matrix
            self._image_ranks[k] = ExactLinearAlgebra.rank(matrix)
        return self._images[k]

    def is_coboundary(self, form: Form) -> bool:
        """Whether ``form`` lies in the image of d (exact linear solve)."""
        if form.is_zero():
            return True
        if form.degree > self.complex.dimension:
            return True
        matrix = self.image_matrix(form.degree)
        return ExactLinearAlgebra.in_column_span(matrix, form.vector(), self._image_ranks[form.degree])

    def class_is_zero(self, form: Form) -> bool:
        return self.is_coboundary(form)

    def positive_degrees(self) -> List[int]:
        return [k for k in sorted(self.representatives) if k > 0 and self.representatives[k]]


def cohomology_basis(graph: SimpleGraph, complex: Optional[CliqueComplex] = None) -> CohomologyBasis:
    """Representatives of H^k = ker d_k / im d_{k-1} for every k.

    Kernel vectors are added greedily while they stay independent modulo the
    image, so the representatives are closed and no nontrivial combination of
    them is a coboundary.
    """
    complex = complex or cliques(graph)
    basis = CohomologyBasis(complex=complex, representatives={})
    for k in range(complex.dimension + 1):
        width = len(complex.simplices(k))
        kernel = ExactLinearAlgebra.nullspace(coboundary_matrix(complex, k), columns=width)
        span = basis.image_matrix(k)
        span_rank = basis._image_ranks[k]
        chosen: List[Form] = []
        for vector in kernel:
            column = np.array(as_integer_vector(vector), dtype=object).reshape(-1, 1)
            extended = np.hstack([span, column]) if span.shape[1] else column
            extended_rank = ExactLinearAlgebra.rank(extended)
            if extended_rank > span_rank:
                span, span_rank = extended, extended_rank
                chosen.append(Form.from_vector(complex, k, [Fraction(x) for x in column[:, 0]]))
        basis.representatives[k] = chosen
        logger.debug("H^%d has dimension %d (%d kernel vectors)", k, len(chosen), len(kernel))
    return basis
