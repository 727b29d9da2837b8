"""Numerical side: series, Frobenius solutions, continuation and monodromy."""
from .continuation import PathSpec, TransportResult, big_loop, continue_along, loop_around
from .frobenius import frobenius_solve, matrix_power, monodromy_of_series
from .monodromy import NumericMonodromy, cross_validate, numeric_monodromy, validate_against
from .series import MatrixSeries, series_solve, system_series
from .systems import FuchsianSystem, ThetaFormEquation, hypergeometric_system, scalar_to_system

__all__ = [
    "FuchsianSystem",
    "MatrixSeries",
    "NumericMonodromy",
    "PathSpec",
    "ThetaFormEquation",
    "TransportResult",
    "big_loop",
    "continue_along",
    "cross_validate",
    "frobenius_solve",
    "hypergeometric_system",
    "loop_around",
    "matrix_power",
    "monodromy_of_series",
    "numeric_monodromy",
    "scalar_to_system",
    "series_solve",
    "system_series",
    "validate_against",
]
