import random
from fractions import Fraction

import numpy as np
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.special import poch

from hypermono.odeflow import PathSpec, continue_along, hypergeometric_system


def test_first_order_example():
    eq = hypergeometric_system([Fraction(1, 3)], [Fraction(1)])
    # theta y = z (theta + 1/3) y
    assert np.allclose(eq.p, [0, 1])
    assert np.allclose(eq.q, [1 / 3, 1])
    assert eq.theta_coeffs == [(0, -1 / 3), (1, -1)]
    assert np.allclose(eq.indicial_roots(), [0])
    assert eq.exponents_at_zero() == [0]


def test_first_order_closed_form_by_continuation():
    eq = hypergeometric_system([Fraction(1, 3)], [Fraction(1)])
    z0, z1 = 0.2, 0.6
    # for n = 1 the unknown vector is just (y)
    T = continue_along(eq.system(), PathSpec(z0, (z1,)), tol=1e-13).matrix
    assert T.shape == (1, 1)
    assert abs(T[0, 0] * (1 - z0) ** (-1 / 3) - (1 - z1) ** (-1 / 3)) < 1e-12


def test_dwork_theta_coefficients_against_sympy():
    beta = [Fraction(k, 5) for k in range(1, 5)]
    eq = hypergeometric_system([0, 0, 0, 0], beta)
    t = sympy.Symbol("t")
    pref = sympy.Poly(sympy.prod([t + sympy.Rational(b.numerator, b.denominator) - 1 for b in beta]), t)
    assert np.allclose(eq.p, [float(c) for c in pref.all_coeffs()[::-1]])
    assert np.allclose(eq.q, [0, 0, 0, 0, 1])
    # elementary symmetric functions of {beta_j - 1}
    shifted = [float(b) - 1 for b in beta]
    assert np.isclose(eq.p[3], sum(shifted))
    assert np.isclose(eq.p[0], np.prod(shifted))


def random_params(rng, n):
    return [Fraction(rng.randint(0, 11), 12) for _ in range(n)]


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_indicial_roots_are_one_minus_beta(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 5)
    alpha, beta = random_params(rng, n), random_params(rng, n)
    eq = hypergeometric_system(alpha, beta)
    expected = np.array([1 - float(b) for b in beta])
    roots = eq.indicial_roots()
    # multiset equality via sorted comparison; repeated roots lose accuracy like eps^(1/m)
    assert np.allclose(np.sort_complex(roots), np.sort_complex(expected.astype(complex)), atol=1e-4)
    assert sorted(eq.exponents_at_zero()) == sorted(1 - b for b in beta)


@settings(max_examples=30, deadline=None)
@given(
    st.lists(st.floats(0.05, 0.95), min_size=1, max_size=4),
    st.lists(st.floats(0.05, 0.95), min_size=0, max_size=3),
)
def test_operator_annihilates_hypergeometric_series(alpha, beta_rest):
    n = len(alpha)
    beta = (beta_rest + [0.5] * n)[: n - 1] + [1.0]
    eq = hypergeometric_system(alpha, beta)
    k = np.arange(40)
    num = np.prod([poch(a, k) for a in alpha], axis=0)
    den = np.prod([poch(b, k) for b in beta], axis=0)
    series = num / den
    res = eq.apply(series.astype(complex))
    # the last coefficient is affected by truncation; theta^n weighs term k by k^n
    scale = np.max(np.abs(series) * (k + 1.0) ** n)
    assert np.max(np.abs(res[:-1])) < 1e-13 * scale


def test_residue_at_one_has_rank_one():
    eq = hypergeometric_system([0.1, 0.3, 0.7], [1, 0.5, 0.25])
    assert np.linalg.matrix_rank(eq.residue_at_one()) == 1
