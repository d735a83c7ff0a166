"""Discrete differential forms on a clique complex.

A p-form is stored sparsely on ascending p-simplices; evaluating it on any
ordering of a simplex applies the sign of the sorting permutation, so total
antisymmetry holds by construction.
"""

from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple, Union

from pydantic import BaseModel

from core.cliques import CliqueComplex, Simplex

Scalar = Union[int, Fraction]


def permutation_sign(values: Sequence[int]) -> int:
    """Sign of the permutation sorting ``values``; 0 on a repeated entry."""
    sign = 1
    items = list(values)
    for i in range(len(items)):
        for j in range(i + 1, len(items)):
            if items[i] == items[j]:
                return 0
            if items[i] > items[j]:
                sign = -sign
    return sign


class FormDocument(BaseModel):
    degree: int
    entries: List[Tuple[List[int], int, int]]


class Form:
    """A skew-symmetric rational function on oriented p-simplices."""

    __slots__ = ("complex", "degree", "_values")

    def __init__(self, complex: CliqueComplex, degree: int, values: Mapping[Simplex, Scalar] = ()):
        self.complex = complex
        self.degree = degree
        self._values: Dict[Simplex, Fraction] = {}
        for simplex, value in dict(values).items():
            key = tuple(sorted(simplex))
            sign = permutation_sign(simplex)
            if sign == 0 or key not in complex:
                raise ValueError(f"{simplex} is not a {degree}-simplex of the complex")
            if len(key) != degree + 1:
                raise ValueError(f"{simplex} has the wrong dimension for a {degree}-form")
            value = Fraction(value) * sign
            if value:
                self._values[key] = self._values.get(key, Fraction(0)) + value
        self._values = {k: v for k, v in self._values.items() if v}

    # ------------------------------------------------------------------
    # Construction
    # ------------------------------------------------------------------

    @classmethod
    def zero(cls, complex: CliqueComplex, degree: int) -> "Form":
        return cls(complex, degree)

    @classmethod
    def constant(cls, complex: CliqueComplex, value: Scalar = 1) -> "Form":
        return cls(complex, 0, {s: value for s in complex.simplices(0)})

    @classmethod
    def from_vector(cls, complex: CliqueComplex, degree: int, vector: Sequence[Scalar]) -> "Form":
        simplices = complex.simplices(degree)
        if len(vector) != len(simplices):
            raise ValueError(f"expected {len(simplices)} values for degree {degree}, got {len(vector)}")
        return cls(complex, degree, {s: v for s, v in zip(simplices, vector) if v})

    @classmethod
    def from_document(cls, complex: CliqueComplex, document: FormDocument) -> "Form":
        return cls(
            complex,
            document.degree,
            {tuple(s): Fraction(num, den) for s, num, den in document.entries},
        )

    # ------------------------------------------------------------------
    # Access
    # ------------------------------------------------------------------

    def __call__(self, *vertices: int) -> Fraction:
        if len(vertices) != self.degree + 1:
            raise ValueError(f"a {self.degree}-form takes {self.degree + 1} vertices")
        sign = permutation_sign(vertices)
        if sign == 0:
            return Fraction(0)
        return sign * self._values.get(tuple(sorted(vertices)), Fraction(0))

    def items(self) -> Iterable[Tuple[Simplex, Fraction]]:
        return self._values.items()

    @property
    def support(self) -> Tuple[Simplex, ...]:
        return tuple(sorted(self._values))

    def vector(self) -> List[Fraction]:
        return [self._values.get(s, Fraction(0)) for s in self.complex.simplices(self.degree)]

    def is_zero(self) -> bool:
        return not self._values

    def to_document(self) -> FormDocument:
        return FormDocument(
            degree=self.degree,
            entries=[(list(s), v.numerator, v.denominator) for s, v in sorted(self._values.items())],
        )

    # ------------------------------------------------------------------
    # Vector space operations
    # ------------------------------------------------------------------

    def _check(self, other: "Form") -> None:
        if other.degree != self.degree:
            raise ValueError(f"degree mismatch: {self.degree} vs {other.degree}")

    def __add__(self, other: "Form") -> "Form":
        self._check(other)
        values = dict(self._values)
        for s, v in other._values.items():
            values[s] = values.get(s, Fraction(0)) + v
        return Form(self.complex, self.degree, values)

    def __neg__(self) -> "Form":
        return Form(self.complex, self.degree, {s: -v for s, v in self._values.items()})

    def __sub__(self, other: "Form") -> "Form":
        return self + (-other)

    def __mul__(self, scalar: Scalar) -> "Form":
        return Form(self.complex, self.degree, {s: v * scalar for s, v in self._values.items()})

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Form):
            return NotImplemented
        return self.degree == other.degree and self._values == other._values

    def __hash__(self) -> int:
        return hash((self.degree, tuple(sorted(self._values.items()))))

    def __repr__(self) -> str:
        shown = ", ".join(f"{list(s)}: {v}" for s, v in sorted(self._values.items())[:6])
        more = ", ..." if len(self._values) > 6 else ""
        return f"Form(degree={self.degree}, {{{shown}{more}}})"


def exterior_derivative(form: Form) -> Form:
    """(df)(x_0..x_{p+1}) = sum_j (-1)^j f(x_0..x_j omitted..x_{p+1})."""
    p = form.degree
    values: Dict[Simplex, Fraction] = {}
    for simplex in form.complex.simplices(p + 1):
        total = Fraction(0)
        for j in range(p + 2):
            face = simplex[:j] + simplex[j + 1:]
            value = form._values.get(face)
            if value:
                total += value if j % 2 == 0 else -value
        if total:
            values[simplex] = total
    return Form(form.complex, p + 1, values)
