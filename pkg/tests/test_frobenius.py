import cmath
import math
from fractions import Fraction

import numpy as np
import pytest
from scipy.linalg import expm

from hypermono.odeflow import (
    FuchsianSystem,
    continue_along,
    frobenius_solve,
    hypergeometric_system,
    loop_around,
    matrix_power,
    monodromy_of_series,
)

TWO_PI_I = 2j * math.pi


def constant_theta_system(A0, K=12):
    A = np.zeros((K,) + np.shape(A0), dtype=complex)
    A[0] = A0
    return A


# --- z^T ----------------------------------------------------------------------


def test_power_of_diagonal():
    a = [0.3, -1.25, 2.0]
    z = 0.7 + 0.4j
    assert np.allclose(matrix_power(np.diag(a), z), np.diag([z**x for x in a]))


def test_power_of_nilpotent_at_e():
    T = np.array([[0.0, 1.0], [0.0, 0.0]])
    assert np.allclose(matrix_power(T, math.e), np.eye(2) + T)


def test_power_lift_picks_up_exponential():
    T = np.array([[0.25, 1.0], [0.0, -0.5]])
    z0 = 0.6
    # z^T solves Y' = (T / z) Y; continuing it once around 0 multiplies by exp(2 pi i T)
    system = FuchsianSystem(residues={0j: T})
    transport = continue_along(system, loop_around(0j, z0), tol=1e-13).matrix
    after = transport @ matrix_power(T, z0)
    assert np.allclose(after, matrix_power(T, z0) @ expm(TWO_PI_I * T), atol=1e-11)


# --- Frobenius fixtures --------------------------------------------------------


def test_scalar_example():
    alpha = 1 / 3
    sol = frobenius_solve(constant_theta_system([[alpha]]), 8)
    assert np.allclose(sol.coefficients[1:], 0)
    assert np.allclose(sol.coefficients[0], 1)
    z = 0.4 + 0.3j
    assert abs(sol.evaluate_full(z)[0, 0] - z**alpha) < 1e-14
    M = monodromy_of_series(sol, 0.5)
    assert abs(M[0, 0] - cmath.exp(TWO_PI_I * alpha)) < 1e-10


def test_unipotent_example():
    # y'' + y'/z = 0 is theta^2 y = 0; unknowns (y, theta y)
    N0 = np.array([[0.0, 1.0], [0.0, 0.0]])
    sol = frobenius_solve(constant_theta_system(N0), 8)
    M = monodromy_of_series(sol, 1.0)
    assert abs(np.trace(M) - 2) < 1e-8
    sv = np.linalg.svd(M - np.eye(2), compute_uv=False)
    assert sv[0] > 1 and sv[1] < 1e-8
    # solutions y1 = 1 and y2 = log z / (2 pi i) have initial vectors e1 and e2 / (2 pi i)
    basis = np.array([[1.0, 0.0], [0.0, 1 / TWO_PI_I]])
    in_solution_basis = np.linalg.solve(basis, M @ basis)
    assert np.allclose(in_solution_basis, [[1, 1], [0, 1]], atol=1e-12)


# --- hypergeometric cases against continuation -----------------------------------


CASES = [
    ([Fraction(1, 3)], [Fraction(1)], 0),
    ([Fraction(1, 4), Fraction(3, 4)], [Fraction(1), Fraction(1, 2)], 0),
    ([Fraction(1, 3), Fraction(1, 5)], [Fraction(1), Fraction(2)], 1),
    ([Fraction(1, 3), Fraction(1, 5), Fraction(2, 7)], [Fraction(1), Fraction(2), Fraction(3)], 2),
    ([Fraction(1, 7), Fraction(2, 7)], [Fraction(1, 2), Fraction(3, 2)], 1),
]


@pytest.mark.parametrize("alpha,beta,shears", CASES)
def test_hypergeometric_frobenius_matches_continuation(alpha, beta, shears):
    eq = hypergeometric_system(alpha, beta)
    base = 0.5
    sol = frobenius_solve(eq.theta_series(160), 120, exponents=eq.exponents_at_zero())
    assert sol.meta["shears"] == shears
    M_frob = monodromy_of_series(sol, base)
    M_cont = continue_along(eq.system(), loop_around(0j, base), tol=1e-13).matrix
    assert np.linalg.norm(M_frob - M_cont) < 1e-9
    # eigenvalues are exp(2 pi i (1 - beta_j)), unchanged by shearing
    # compared through the characteristic polynomial, which stays well conditioned
    # when an eigenvalue repeats
    pred = np.poly([cmath.exp(TWO_PI_I * float(1 - b)) for b in beta])
    assert np.allclose(np.poly(M_frob), pred, atol=1e-9)


def test_numeric_resonance_detection_agrees_with_exact():
    eq = hypergeometric_system([0.3, 0.2], [1.0, 2.0])
    exact = frobenius_solve(eq.theta_series(160), 120, exponents=[Fraction(0), Fraction(-1)])
    numeric = frobenius_solve(eq.theta_series(160), 120)
    assert exact.meta["shears"] == numeric.meta["shears"] == 1
    assert np.allclose(monodromy_of_series(exact, 0.5), monodromy_of_series(numeric, 0.5), atol=1e-10)


def test_too_few_coefficients():
    eq = hypergeometric_system([0.3], [1.0])
    with pytest.raises(ValueError):
        frobenius_solve(eq.theta_series(5), 10)
