from cohomology.betti import betti, cohomology_basis, poincare_polynomial
from cohomology.cup_length import cup_length, cup_product
from cohomology.forms import Form, exterior_derivative
from cohomology.laws import check_associative, check_graded_commutative, check_leibniz, check_nilpotent
from cohomology.products import pre_wedge, wedge

__all__ = [
    "Form",
    "betti",
    "check_associative",
    "check_graded_commutative",
    "check_leibniz",
    "check_nilpotent",
    "cohomology_basis",
    "cup_length",
    "cup_product",
    "exterior_derivative",
    "poincare_polynomial",
    "pre_wedge",
    "wedge",
]
