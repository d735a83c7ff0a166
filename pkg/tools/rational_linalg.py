"""Exact linear algebra over the rationals on numpy object arrays.

Ranks use fraction-free (Bareiss) elimination on integer matrices; kernels
use Gauss-Jordan elimination on ``Fraction`` entries.
"""

from fractions import Fraction
from math import lcm
from typing import List, Optional, Sequence, Tuple

import numpy as np


def as_integer_rows(matrix: np.ndarray) -> np.ndarray:
    """Scale each row by the lcm of its denominators; the row space is unchanged."""
    result = np.empty(matrix.shape, dtype=object)
    for i in range(matrix.shape[0]):
        row = [Fraction(x) for x in matrix[i]]
        scale = lcm(*(x.denominator for x in row)) if row else 1
        result[i] = [int(x * scale) for x in row]
    return result


def as_integer_vector(vector: Sequence) -> List[int]:
    values = [Fraction(x) for x in vector]
    scale = lcm(*(x.denominator for x in values)) if values else 1
    return [int(x * scale) for x in values]


class ExactLinearAlgebra:
    """Rank, kernel and span membership without floating point."""

    @staticmethod
    def rank(matrix: np.ndarray) -> int:
        """Rank by Bareiss elimination.

        Args:
            matrix: 2-d object array of ints or Fractions

        Returns:
            int: the rank over the rationals

        Examples:
            >>> ExactLinearAlgebra.rank(np.array([[1, 2], [2, 4]], dtype=object))
            1
            >>> ExactLinearAlgebra.rank(np.array([[0, 1], [1, 0]], dtype=object))
            2
        """
        if matrix.size == 0:
            return 0
        m = as_integer_rows(matrix)
        rows, cols = m.shape
        r = 0
        previous = 1
        for c in range(cols):
            if r == rows:
                break
            pivot = next((i for i in range(r, rows) if m[i, c] != 0), None)
            if pivot is None:
                continue
            if pivot != r:
                m[[r, pivot]] = m[[pivot, r]]
            for i in range(r + 1, rows):
                m[i, c + 1:] = (m[r, c] * m[i, c + 1:] - m[i, c] * m[r, c + 1:]) // previous
                m[i, c] = 0
            previous = m[r, c]
            r += 1
        return r

    @staticmethod
    def rref(matrix: np.ndarray) -> Tuple[np.ndarray, List[int]]:
        """Reduced row echelon form over ``Fraction`` and the pivot columns."""
        m = np.array([[Fraction(x) for x in row] for row in matrix], dtype=object).reshape(matrix.shape)
        rows, cols = m.shape
        pivots: List[int] = []
        r = 0
        for c in range(cols):
            if r == rows:
                break
            pivot = next((i for i in range(r, rows) if m[i, c] != 0), None)
            if pivot is None:
                continue
            if pivot != r:
                m[[r, pivot]] = m[[pivot, r]]
            m[r] = m[r] / m[r, c]
            for i in range(rows):
                if i != r and m[i, c] != 0:
                    m[i] = m[i] - m[i, c] * m[r]
            pivots.append(c)
            r += 1
        return m, pivots

    @staticmethod
    def nullspace(matrix: np.ndarray, columns: Optional[int] = None) -> List[List[Fraction]]:
        """Basis of {x : matrix @ x = 0}.

        ``columns`` gives the width for a one-dimensional empty input.

        Examples:
            >>> ExactLinearAlgebra.nullspace(np.array([[1, 1]], dtype=object))
            [[Fraction(-1, 1), Fraction(1, 1)]]
        """
        width = matrix.shape[1] if matrix.ndim == 2 else (columns or 0)
        if matrix.size == 0:
            return [[Fraction(int(i == j)) for i in range(width)] for j in range(width)]
        reduced, pivots = ExactLinearAlgebra.rref(matrix)
        free = [c for c in range(width) if c not in pivots]
        basis = []
        for f in free:
            vector = [Fraction(0)] * width
            vector[f] = Fraction(1)
            for row, p in enumerate(pivots):
                vector[p] = -reduced[row, f]
            basis.append(vector)
        return basis

    @staticmethod
    def in_column_span(matrix: np.ndarray, vector: Sequence, matrix_rank: Optional[int] = None) -> bool:
        """Whether ``vector`` is a rational combination of the columns of ``matrix``."""
        if all(Fraction(x) == 0 for x in vector):
            return True
        if matrix.size == 0:
            return False
        base = ExactLinearAlgebra.rank(matrix) if matrix_rank is None else matrix_rank
        column = np.array(as_integer_vector(vector), dtype=object).reshape(-1, 1)
        augmented = np.hstack([matrix, column])
        return ExactLinearAlgebra.rank(augmented) == base
