"""Monodromy of the generalized hypergeometric equation, exactly and numerically."""
from .classify import (
    ClassificationReport,
    arithmeticity_criterion,
    finite_closure,
    fourteen_families,
    interlace_check,
    invariant_form,
    primitivity_check,
    zariski_classification,
)
from .exactmatrix import ExactMatrix
from .exactpoly import (
    ExactPoly,
    ParameterList,
    cyclotomic,
    decimate_test,
    parameters_from_poly,
    parse_poly,
    poly_from_parameters,
    poly_gcd,
)
from .levelt import (
    HypergeometricGroup,
    build_group,
    companion_matrix,
    irreducibility_check,
    levelt_normal_form,
)

__version__ = "0.1.0"
