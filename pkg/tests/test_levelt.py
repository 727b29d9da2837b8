import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hypermono.errors import DegreeMismatch, EqualPolynomials, NotMonic, NotReflection, SharedEigenvalue
from hypermono.exactmatrix import ExactMatrix
from hypermono.exactpoly import ExactPoly, cyclotomic
from hypermono.levelt import (
    Irreducible,
    Reducible,
    build_group,
    companion_matrix,
    irreducibility_check,
    levelt_normal_form,
    quotient_action,
)

from _gen import random_pair, unimodular

X = ExactPoly.x()
SEEDS = st.integers(0, 2**32 - 1)
DWORK_F = (X - 1) ** 4
DWORK_G = cyclotomic(5)


def last_column(M):
    return [M[i, M.size - 1] for i in range(M.size)]


# --- companion matrices ------------------------------------------------------


def test_companion_examples():
    assert companion_matrix(X - 1).to_int_rows() == [[1]]
    assert last_column(companion_matrix(DWORK_F)) == [-1, 4, -6, 4]
    assert last_column(companion_matrix(DWORK_G)) == [-1, -1, -1, -1]
    with pytest.raises(NotMonic):
        companion_matrix(2 * X + 1)


@settings(max_examples=150, deadline=None)
@given(st.lists(st.integers(-6, 6), min_size=1, max_size=12))
def test_companion_charpoly_and_det(low):
    f = ExactPoly(low + [1])
    A = companion_matrix(f)
    n = f.degree
    assert A.charpoly() == f
    assert A.det() == (-1) ** n * f(0)


# --- hypergeometric groups ---------------------------------------------------


def test_dwork_group():
    H = build_group(DWORK_F, DWORK_G)
    C = H.C
    assert C.to_int_rows() == [[1, 0, 0, -5], [0, 1, 0, 5], [0, 0, 1, -5], [0, 0, 0, 1]]
    assert (C - ExactMatrix.identity(4)).rank() == 1
    assert H.c == 1


def test_rotation_reflection_group():
    H = build_group(X**2 + 1, X**2 - 1)
    assert H.A.to_int_rows() == [[0, -1], [1, 0]]
    assert H.B.to_int_rows() == [[0, 1], [1, 0]]
    assert H.C.to_int_rows() == [[1, 0], [0, -1]]
    assert H.c == -1


def test_build_group_errors():
    with pytest.raises(EqualPolynomials):
        build_group(X**2 + 1, X**2 + 1)
    with pytest.raises(DegreeMismatch):
        build_group(X**2 + 1, X - 1)
    with pytest.raises(NotMonic):
        build_group(2 * X**2 + 1, X**2 - 1)


@settings(max_examples=80, deadline=None)
@given(SEEDS)
def test_reflection_structure(seed):
    rng = random.Random(seed)
    f, g = random_pair(8, rng)
    H = build_group(f, g)
    n = H.n
    # C is the identity on the first n-1 basis vectors
    for j in range(n - 1):
        assert H.C.column(j) == tuple(Fraction(int(i == j)) for i in range(n))
    assert (H.C - ExactMatrix.identity(n)).rank() == 1
    # exceptional eigenvalue det C = g(0)/f(0) = 1/c
    assert H.exceptional_eigenvalue == H.C.det() == g(0) / f(0) == 1 / H.c


# --- irreducibility ----------------------------------------------------------


def test_irreducibility_examples():
    assert isinstance(irreducibility_check(build_group(DWORK_F, DWORK_G)), Irreducible)
    assert isinstance(irreducibility_check(build_group(X**2 + 1, X**2 - 1)), Irreducible)
    red = irreducibility_check(build_group((X - 1) * (X + 1), (X - 1) ** 2))
    assert isinstance(red, Reducible)
    assert red.k == X - 1
    assert red.actions_coincide


@settings(max_examples=60, deadline=None)
@given(SEEDS)
def test_reducible_quotient_actions_coincide(seed):
    rng = random.Random(seed)
    f, g = random_pair(8, rng)
    H = build_group(f, g)
    res = irreducibility_check(H)
    if isinstance(res, Irreducible):
        return
    qa, qb = quotient_action(H, res.k)
    assert qa == qb
    assert qa.charpoly() == res.k


# --- normal form -------------------------------------------------------------


def test_normal_form_fixed_point():
    H = build_group(DWORK_F, DWORK_G)
    nf = levelt_normal_form(H.A, H.B)
    assert nf.A == H.A and nf.B == H.B


def test_normal_form_recovers_after_conjugation():
    H = build_group(DWORK_F, DWORK_G)
    Q = unimodular(4, random.Random(7))
    Qi = Q.inverse()
    nf = levelt_normal_form(Q @ H.A @ Qi, Q @ H.B @ Qi)
    assert nf.A == H.A and nf.B == H.B
    # the returned basis really conjugates the input to the output
    assert nf.P.inverse() @ (Q @ H.A @ Qi) @ nf.P == nf.A


def test_normal_form_errors():
    A = companion_matrix((X - 1) * (X + 1))
    with pytest.raises(SharedEigenvalue):
        levelt_normal_form(A, A)
    with pytest.raises(NotReflection):
        # coprime spectra, but a - b = a + I has full rank
        levelt_normal_form(companion_matrix((X - 1) ** 3), ExactMatrix.identity(3).scale(-1))


@settings(max_examples=40, deadline=None)
@given(SEEDS)
def test_normal_form_conjugation_invariant(seed):
    rng = random.Random(seed)
    f, g = random_pair(6, rng, coprime=True)
    H = build_group(f, g)
    n = H.n
    # arbitrary invertible rational conjugator, not only unimodular ones
    while True:
        Q = ExactMatrix([[Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(n)] for _ in range(n)])
        if Q.det() != 0:
            break
    Qi = Q.inverse()
    base = levelt_normal_form(H.A, H.B)
    moved = levelt_normal_form(Q @ H.A @ Qi, Q @ H.B @ Qi)
    assert (moved.A, moved.B) == (base.A, base.B) == (H.A, H.B)
