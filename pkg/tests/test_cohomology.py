import sys
from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, settings, strategies as st

from cohomology.betti import betti, cohomology_basis, format_polynomial, poincare_polynomial
from cohomology.cup_length import CupProduct, cup_length, cup_product
from cohomology.forms import Form, exterior_derivative, permutation_sign
from cohomology.laws import (
    check_associative,
    check_gauge_independence,
    check_graded_commutative,
    check_leibniz,
    check_nilpotent,
)
from cohomology.products import pre_wedge, wedge
from conftest import graphs, random_form
from core import brackets
from core.cliques import cliques, euler_characteristic
from core.errors import AlgebraLawError, NonClosedFormError
from core.fixtures import complete_graph, cycle_graph, fixture, path_graph
from core.graph import SimpleGraph


@pytest.fixture
def triangle():
    return cliques(complete_graph(3))


@pytest.fixture
def tetrahedron():
    return cliques(complete_graph(4))


def _unit_forms(triangle):
    i = Form(triangle, 1, {(1, 2): 1})
    j = Form(triangle, 1, {(2, 3): 1})
    k = Form(triangle, 1, {(3, 1): 1})
    t = Form(triangle, 2, {(1, 2, 3): 1})
    return i, j, k, t


# ============================================================================
# Forms
# ============================================================================

def test_form_is_antisymmetric(triangle):
    k = Form(triangle, 1, {(3, 1): 1})
    assert k(3, 1) == 1
    assert k(1, 3) == -1
    assert k(1, 1) == 0
    t = Form(triangle, 2, {(1, 2, 3): 2})
    assert t(2, 1, 3) == -2
    assert t(2, 3, 1) == 2


def test_form_rejects_foreign_simplices():
    complex = cliques(cycle_graph(4))
    with pytest.raises(ValueError):
        Form(complex, 1, {(1, 3): 1})
    with pytest.raises(ValueError):
        Form(complex, 0, {(1, 2): 1})


def test_exterior_derivative_of_function():
    complex = cliques(path_graph(3))
    f = Form(complex, 0, {(1,): 2, (2,): 5, (3,): 4})
    df = exterior_derivative(f)
    assert df(1, 2) == 3
    assert df(3, 2) == 1


@pytest.mark.slow
@settings(max_examples=1000, deadline=None)
@given(st.data())
def test_d_squared_vanishes(data):
    graph = data.draw(graphs(min_order=3, max_order=8))
    complex = cliques(graph)
    degree = data.draw(st.integers(0, max(complex.dimension - 2, 0)))
    check_nilpotent(random_form(data, complex, degree))


# ============================================================================
# Products
# ============================================================================

def test_triangle_product_table(triangle):
    i, j, k, t = _unit_forms(triangle)
    assert wedge(i, j) == t * Fraction(1, 3)
    assert wedge(j, k) == t * Fraction(1, 3)
    assert wedge(k, i) == t * Fraction(1, 3)
    assert wedge(j, i) == t * Fraction(-1, 3)
    assert wedge(i, i).is_zero()


def test_product_of_combinations(triangle):
    i, j, k, t = _unit_forms(triangle)
    f = i * 3 + j * 4 + k * 5
    g = i * 2 + j * 1 + k * 4
    assert wedge(f, g) == t * Fraction(4, 3)


def test_function_times_form_averages_over_vertices(triangle):
    f = Form(triangle, 0, {(1,): 3, (2,): 6, (3,): 0})
    t = Form(triangle, 2, {(1, 2, 3): 1})
    assert wedge(f, t) == t * 3
    g = Form(triangle, 0, {(1,): 2, (2,): 7})
    assert wedge(f, g) == Form(triangle, 0, {(1,): 6, (2,): 42})


def test_pre_wedge_of_two_form_and_one_form(tetrahedron):
    k = Form.from_vector(tetrahedron, 2, [1, -2, 3, 5])
    h = Form.from_vector(tetrahedron, 1, [2, -1, 4, 1, 3, -3])
    for x in permutations((1, 2, 3, 4)):
        x0, x1, x2, x3 = x
        expected = k(x0, x1, x2) * h(x0, x3) - k(x0, x1, x3) * h(x0, x2) + k(x0, x2, x3) * h(x0, x1)
        assert pre_wedge(k, h)(*x) == expected


def _determinant(rows):
    n = len(rows)
    return sum(
        permutation_sign(p) * _product(rows[r][p[r]] for r in range(n)) for p in permutations(range(n))
    )


def _product(values):
    result = Fraction(1)
    for v in values:
        result *= v
    return result


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_pre_wedge_of_one_forms_is_a_determinant(data):
    complex = cliques(complete_graph(4))
    n = data.draw(st.integers(1, 3))
    forms = [random_form(data, complex, 1) for _ in range(n)]
    x = data.draw(st.permutations([1, 2, 3, 4]))[: n + 1]
    matrix = [[f(x[0], x[c + 1]) for c in range(n)] for f in forms]
    assert pre_wedge(*forms)(*x) == _determinant(matrix)


@pytest.mark.slow
@settings(max_examples=1000, deadline=None)
@given(st.data())
def test_graded_commutativity(data):
    graph = data.draw(graphs(min_order=3, max_order=8))
    complex = cliques(graph)
    p = data.draw(st.integers(0, complex.dimension))
    q = data.draw(st.integers(0, complex.dimension - p))
    check_graded_commutative(random_form(data, complex, p), random_form(data, complex, q))


@pytest.mark.slow
@settings(max_examples=1000, deadline=None)
@given(st.data())
def test_leibniz_rule_for_functions(data):
    complex = cliques(data.draw(graphs(min_order=2, max_order=8)))
    check_leibniz(random_form(data, complex, 0), random_form(data, complex, 0))


def test_product_is_not_associative_on_cochains():
    edge = cliques(path_graph(2))
    point = Form(edge, 0, {(1,): 1})
    one = Form(edge, 1, {(1, 2): 1})
    assert wedge(wedge(point, point), one) == one * Fraction(1, 2)
    assert wedge(point, wedge(point, one)) == one * Fraction(1, 4)
    with pytest.raises(AlgebraLawError, match="associativity"):
        check_associative(point, point, one)


def test_leibniz_rule_fails_on_cochains(triangle):
    point = Form(triangle, 0, {(1,): 1})
    one = Form(triangle, 1, {(1, 2): 1})
    t = Form(triangle, 2, {(1, 2, 3): 1})
    assert exterior_derivative(wedge(point, one)) == t * Fraction(1, 2)
    assert wedge(exterior_derivative(point), one) == t * Fraction(1, 3)
    assert wedge(point, exterior_derivative(one)) == t * Fraction(1, 3)
    with pytest.raises(AlgebraLawError, match="Leibniz"):
        check_leibniz(point, one)


# ============================================================================
# Betti numbers and bases
# ============================================================================

@pytest.mark.parametrize(
    "name, expected",
    [
        ("figure8", (1, 2)),
        ("octahedron", (1, 0, 1)),
        ("cross_polytope_3", (1, 0, 0, 1)),
        ("torus16", (1, 2, 1)),
        ("dunce_hat", (1, 0, 0)),
        ("cycle_5", (1, 1)),
        ("discrete_3", (3,)),
    ],
)
def test_betti_numbers(name, expected):
    assert betti(fixture(name).graph) == expected


def test_poincare_polynomial_text():
    assert format_polynomial(poincare_polynomial(fixture("torus16").graph)) == "1 + 2t + t^2"
    assert format_polynomial(()) == "0"


@pytest.mark.slow
@settings(max_examples=1000, deadline=None)
@given(graphs(max_order=8))
def test_euler_poincare(graph):
    assert sum((-1) ** k * b for k, b in enumerate(betti(graph))) == euler_characteristic(graph)


def test_cycle_circulation_is_closed_but_not_exact():
    graph = cycle_graph(4)
    basis = cohomology_basis(graph)
    circulation = Form(basis.complex, 1, {(1, 2): 1, (2, 3): 1, (3, 4): 1, (4, 1): 1})
    assert exterior_derivative(circulation).is_zero()
    assert not basis.is_coboundary(circulation)
    potential = Form(basis.complex, 0, {(1,): 1, (3,): 2})
    assert basis.is_coboundary(exterior_derivative(potential))


def test_basis_representatives_are_closed(torus16):
    basis = cohomology_basis(torus16.graph)
    assert basis.betti == (1, 2, 1)
    for forms in basis.representatives.values():
        for form in forms:
            assert exterior_derivative(form).is_zero()
            assert not basis.is_coboundary(form)


# ============================================================================
# Cup length
# ============================================================================

@pytest.mark.parametrize(
    "name, expected",
    [
        ("figure8", 2),
        ("octahedron", 2),
        ("icosahedron", 2),
        ("torus16", 3),
        ("cycle_6", 2),
        ("complete_5", 1),
        ("dunce_hat", 1),
        ("discrete_4", 1),
    ],
)
def test_cup_length(name, expected):
    bracket = cup_length(fixture(name).graph)
    assert bracket.exact
    assert bracket.value == expected


def test_cup_length_without_positive_classes_uses_degrees():
    bracket = cup_length(complete_graph(4))
    assert bracket.lower_method == brackets.DEGREE


def test_torus_product_certificate(torus16):
    bracket = cup_length(torus16.graph)
    product = bracket.certificates["product"]
    assert [k for k, _ in product] == [1, 1]


def test_cup_length_examines_lengths_past_a_vanishing_one(torus16, monkeypatch):
    module = sys.modules[cup_length.__module__]
    real = module.cup_product

    def single_classes_vanish(basis, classes):
        product = real(basis, classes)
        return CupProduct(form=product.form, vanishes=product.vanishes or len(classes) == 1)

    monkeypatch.setattr(module, "cup_product", single_classes_vanish)
    bracket = cup_length(torus16.graph)
    assert bracket.value == 3
    assert bracket.certificates["product"] is not None


def test_vanishing_products_close_below_the_degree_bound():
    # circle and sphere joined at a vertex: b = (1, 1, 1) and a.a = 0
    octahedron = fixture("octahedron").graph
    graph = SimpleGraph.from_edges(list(octahedron.edges) + [(1, 7), (7, 8), (8, 9), (9, 1)])
    bracket = cup_length(graph)
    assert bracket.value == 2
    assert bracket.upper_method == brackets.EXHAUSTIVE


def test_cup_product_rejects_open_forms():
    basis = cohomology_basis(complete_graph(3))
    with pytest.raises(NonClosedFormError):
        cup_product(basis, [Form(basis.complex, 0, {(1,): 1})])


def test_cup_product_survives_gauge_shift(octahedron):
    basis = cohomology_basis(octahedron)
    constant = basis.representatives[0][0]
    area = basis.representatives[2][0]
    shift = Form.from_vector(basis.complex, 1, [(i % 3) - 1 for i in range(12)])
    assert not cup_product(basis, [constant, area]).vanishes
    check_gauge_independence(basis, [constant, area], [None, shift])


def test_vanishing_product_stays_vanishing(figure8):
    basis = cohomology_basis(figure8.graph)
    first, second = basis.representatives[1]
    shift = Form(basis.complex, 0, {(1,): 3, (5,): -1})
    # no 2-simplices, so every product of two 1-classes vanishes
    assert cup_product(basis, [first, second]).vanishes
    check_gauge_independence(basis, [first, second], [shift, None])
