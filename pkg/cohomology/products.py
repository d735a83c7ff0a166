"""Pre-wedge and wedge products of forms.

The wedge of a p-form and a q-form averages the pre-wedge over the n+1
cyclic rotations of its argument (n = p + q), each rotation weighted by its
sign (-1)^(k n).
"""

from fractions import Fraction
from functools import reduce as fold
from itertools import combinations
from typing import Dict, Iterator, List, Sequence, Tuple

from cohomology.forms import Form, permutation_sign
from core.cliques import Simplex


def _shuffles(positions: Tuple[int, ...], sizes: Sequence[int]) -> Iterator[List[Tuple[int, ...]]]:
    """Split ``positions`` into consecutive ascending blocks of the given sizes, in every way."""
    if not sizes:
        if not positions:
            yield []
        return
    for block in combinations(positions, sizes[0]):
        rest = tuple(p for p in positions if p not in block)
        for tail in _shuffles(rest, sizes[1:]):
            yield [block] + tail


class PreWedge:
    """Centered product f_1 ^' ... ^' f_r evaluated at (x_0, x_1, ..., x_n).

    Antisymmetric in the last n slots; x_0 is distinguished, so this is not a
    form.
    """

    def __init__(self, *forms: Form):
        if not forms:
            raise ValueError("pre-wedge needs at least one form")
        self.forms = forms
        self.degree = sum(f.degree for f in forms)

    def __call__(self, x0: int, *rest: int) -> Fraction:
        if len(rest) != self.degree:
            raise ValueError(f"pre-wedge of degree {self.degree} takes {self.degree + 1} vertices")
        sizes = [f.degree for f in self.forms]
        total = Fraction(0)
        for blocks in _shuffles(tuple(range(self.degree)), sizes):
            sign = permutation_sign([p for block in blocks for p in block])
            term = Fraction(sign)
            for form, block in zip(self.forms, blocks):
                term *= form(x0, *(rest[p] for p in block))
                if not term:
                    break
            total += term
        return total


def pre_wedge(*forms: Form) -> PreWedge:
    return PreWedge(*forms)


def wedge(f: Form, g: Form) -> Form:
    """The (p+q)-form f ^ g; zero when the complex has no (p+q)-simplices."""
    if f.complex is not g.complex and f.complex != g.complex:
        raise ValueError("forms live on different complexes")
    n = f.degree + g.degree
    product = PreWedge(f, g)
    values: Dict[Simplex, Fraction] = {}
    if f.is_zero() or g.is_zero():
        return Form(f.complex, n)
    for simplex in f.complex.simplices(n):
        total = Fraction(0)
        for k in range(n + 1):
            rotated = simplex[k:] + simplex[:k]
            value = product(*rotated)
            total += -value if (k * n) % 2 else value
        if total:
            values[simplex] = total / (n + 1)
    return Form(f.complex, n, values)


def wedge_all(forms: Sequence[Form]) -> Form:
    """Left-nested product ((f_1 ^ f_2) ^ f_3) ^ ..."""
    return fold(wedge, forms)
