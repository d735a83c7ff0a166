from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from tools.rational_linalg import ExactLinearAlgebra
from tools.set_cover import SetCoverSolver

small_matrices = st.integers(1, 5).flatmap(
    lambda rows: st.integers(1, 5).flatmap(
        lambda cols: st.lists(
            st.lists(st.integers(-4, 4), min_size=cols, max_size=cols), min_size=rows, max_size=rows
        )
    )
)


def test_rank_examples():
    assert ExactLinearAlgebra.rank(np.array([[1, 2], [2, 4]], dtype=object)) == 1
    assert ExactLinearAlgebra.rank(np.array([[0, 1], [1, 0]], dtype=object)) == 2
    assert ExactLinearAlgebra.rank(np.zeros((3, 0), dtype=object)) == 0


def test_rank_with_fractions():
    matrix = np.array([[Fraction(1, 3), Fraction(2, 3)], [1, 2]], dtype=object)
    assert ExactLinearAlgebra.rank(matrix) == 1


@settings(max_examples=200, deadline=None)
@given(small_matrices)
def test_rank_agrees_with_floating_point_on_small_integers(rows):
    matrix = np.array(rows, dtype=object)
    assert ExactLinearAlgebra.rank(matrix) == np.linalg.matrix_rank(np.array(rows, dtype=float))


@settings(max_examples=100, deadline=None)
@given(small_matrices)
def test_nullspace_is_exact_kernel(rows):
    matrix = np.array(rows, dtype=object)
    cols = matrix.shape[1]
    kernel = ExactLinearAlgebra.nullspace(matrix, columns=cols)
    assert len(kernel) == cols - ExactLinearAlgebra.rank(matrix)
    for vector in kernel:
        assert all(sum(Fraction(a) * b for a, b in zip(row, vector)) == 0 for row in rows)


def test_in_column_span():
    matrix = np.array([[1, 0], [1, 1], [0, 1]], dtype=object)
    assert ExactLinearAlgebra.in_column_span(matrix, [2, 5, 3])
    assert not ExactLinearAlgebra.in_column_span(matrix, [1, 0, 0])


def _cover_size_by_enumeration(candidates, universe):
    best = None
    for chosen in range(1, 1 << len(candidates)):
        union = 0
        for i, c in enumerate(candidates):
            if chosen >> i & 1:
                union |= c
        if union & universe == universe:
            size = bin(chosen).count("1")
            best = size if best is None else min(best, size)
    return best


def test_set_cover_finds_optimum():
    candidates = [0b0011, 0b1100, 0b0110, 0b1001, 0b0111]
    chosen = SetCoverSolver(candidates, 0b1111).run()
    assert len(chosen) == 2
    union = 0
    for c in chosen:
        union |= c
    assert union == 0b1111


def test_set_cover_without_solution():
    assert SetCoverSolver([0b01], 0b11).run() is None
    assert SetCoverSolver([0b01], 0).run() == []


@settings(max_examples=150, deadline=None)
@given(st.lists(st.integers(1, 255), min_size=1, max_size=9))
def test_set_cover_matches_enumeration(candidates):
    universe = 0
    for c in candidates:
        universe |= c
    chosen = SetCoverSolver(candidates, universe).run()
    assert len(chosen) == _cover_size_by_enumeration(candidates, universe)


@pytest.mark.parametrize("universe_bits", [6, 8])
def test_set_cover_of_singletons_and_pairs(universe_bits):
    pairs = [0b11 << i for i in range(0, universe_bits, 2)]
    singles = [1 << i for i in range(universe_bits)]
    chosen = SetCoverSolver(singles + pairs, (1 << universe_bits) - 1).run()
    assert len(chosen) == universe_bits // 2


def test_set_cover_is_independent_of_threads():
    # Many optimal covers spread over several top-level branches
    candidates = [0b111 << i for i in range(0, 10)] + [0b1001001 << i for i in range(6)] + [1 << i for i in range(12)]
    universe = (1 << 12) - 1
    single = SetCoverSolver(candidates, universe).run(threads=1)
    pooled = SetCoverSolver(candidates, universe).run(threads=2)
    assert len(single) == 4
    assert pooled == single
