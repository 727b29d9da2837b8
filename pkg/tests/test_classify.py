import itertools
import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from hypermono.classify import (
    ArithmeticByCriterion,
    ExceededCap,
    FiniteOrder,
    Imprimitive,
    Inconclusive,
    Primitive,
    arithmeticity_criterion,
    catalog_metadata,
    classify_polys,
    finite_closure,
    fourteen_families,
    interlace_check,
    invariant_form,
    lookup_family,
    primitivity_check,
    zariski_classification,
)
from hypermono.errors import ZeroDifference
from hypermono.exactmatrix import ExactMatrix
from hypermono.exactpoly import ExactPoly, ParameterList, cyclotomic, cyclotomic_factorization, parameters_from_poly
from hypermono.levelt import build_group

from _gen import random_pair

X = ExactPoly.x()
SEEDS = st.integers(0, 2**32 - 1)
DWORK_F, DWORK_G = (X - 1) ** 4, cyclotomic(5)


def PL(*xs):
    return ParameterList([Fraction(x) for x in xs])


def naive_closure(gens, cap):
    """Breadth-first closure over exact matrices, no hashing tricks."""
    n = gens[0].size
    ident = ExactMatrix.identity(n)
    seen, frontier = {ident}, [ident]
    while frontier:
        nxt = []
        for M in frontier:
            for G in gens:
                P = M @ G
                if P not in seen:
                    seen.add(P)
                    nxt.append(P)
                    if len(seen) > cap:
                        return None
        frontier = nxt
    return len(seen)


# --- interlacing -------------------------------------------------------------


def test_interlace_examples():
    assert interlace_check(PL("1/4", "3/4"), PL(0, "1/2")) == (True, "βαβα")
    ok, _ = interlace_check(PL(0, 0, 0, 0), PL("1/5", "2/5", "3/5", "4/5"))
    assert not ok
    assert interlace_check(PL(0), PL("1/2"))[0]


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 5).flatmap(lambda n: st.tuples(
    st.lists(st.fractions(0, 1, max_denominator=12), min_size=n, max_size=n),
    st.lists(st.fractions(0, 1, max_denominator=12), min_size=n, max_size=n),
)))
def test_interlace_symmetry(pair):
    a, b = ParameterList(pair[0]), ParameterList(pair[1])
    assert interlace_check(a, b)[0] == interlace_check(b, a)[0]


# --- primitivity -------------------------------------------------------------


def test_primitivity_examples():
    assert isinstance(primitivity_check(DWORK_F, DWORK_G), Primitive)
    imp = primitivity_check(X**2 + 1, X**2 - 1)
    assert isinstance(imp, Imprimitive)
    assert (imp.k, imp.f1, imp.g1) == (2, X + 1, X - 1)
    assert isinstance(primitivity_check(cyclotomic(5), (X + 1) ** 2 * (X**2 + 1)), Primitive)


# --- invariant form ----------------------------------------------------------


def test_dwork_form_against_sympy():
    H = build_group(DWORK_F, DWORK_G)
    omega = invariant_form(H)
    assert omega.T == omega.scale(-1)
    assert omega.det() != 0
    assert H.A.T @ omega @ H.A == omega
    assert H.B.T @ omega @ H.B == omega
    # independent oracle: sympy nullspace of the same linear conditions
    syms = sympy.symbols("w0:16")
    W = sympy.Matrix(4, 4, syms)
    A, B = sympy.Matrix(H.A.to_int_rows()), sympy.Matrix(H.B.to_int_rows())
    eqs = list(A.T * W * A - W) + list(B.T * W * B - W)
    sol = sympy.linsolve(eqs, syms)
    (vec,) = sol
    free = sorted(set().union(*(sympy.sympify(v).free_symbols for v in vec)), key=str)
    assert len(free) == 1
    ref = sympy.Matrix(4, 4, [sympy.sympify(v).subs(free[0], 1) for v in vec])
    ratio = None
    for i in range(4):
        for j in range(4):
            if ref[i, j] != 0:
                r = Fraction(int(omega[i, j])) / Fraction(str(ref[i, j]))
                assert ratio is None or r == ratio
                ratio = r


def test_rotation_form_is_symmetric_diagonal():
    omega = invariant_form(build_group(X**2 + 1, X**2 - 1))
    assert omega.to_int_rows() == [[1, 0], [0, 1]]


def test_form_rejected_when_reducible():
    with pytest.raises(ValueError):
        invariant_form(build_group((X - 1) * (X + 1), (X - 1) ** 2))


@settings(max_examples=40, deadline=None)
@given(SEEDS)
def test_form_is_invariant_and_matches_c(seed):
    f, g = random_pair(6, random.Random(seed), coprime=True)
    H = build_group(f, g)
    omega = invariant_form(H)
    assert H.A.T @ omega @ H.A == omega
    assert H.B.T @ omega @ H.B == omega
    if H.c == 1:
        assert omega.T == omega.scale(-1)
    elif H.c == -1:
        assert omega.T == omega


# --- arithmeticity -----------------------------------------------------------


def test_arithmeticity_fixtures():
    crit = arithmeticity_criterion(cyclotomic(5), (X + 1) ** 2 * (X**2 + 1))
    assert isinstance(crit, ArithmeticByCriterion)
    assert crit.difference == -(X**3) - X**2 - X
    crit = arithmeticity_criterion(DWORK_F, DWORK_G)
    assert isinstance(crit, Inconclusive)
    assert crit.difference == -5 * X**3 + 5 * X**2 - 5 * X and crit.c_d == -5
    # suspect pair: the primitivity precondition runs first and passes, since
    # (x-1)^4 is not a polynomial in x^k
    crit = arithmeticity_criterion(DWORK_F, (X + 1) ** 4)
    assert isinstance(crit, Inconclusive)
    assert crit.difference == -8 * X**3 - 8 * X and crit.c_d == -8
    with pytest.raises(ValueError):
        arithmeticity_criterion((X**2 - 1) ** 2, (X**2 + 1) ** 2)
    with pytest.raises(ZeroDifference):
        arithmeticity_criterion(DWORK_F, DWORK_F)


# --- fourteen families --------------------------------------------------------


def independent_family_specs():
    idx = [m for m in range(2, 40) if int(sympy.totient(m)) <= 4]
    out = set()
    for r in range(1, 5):
        for combo in itertools.combinations_with_replacement(idx, r):
            if sum(int(sympy.totient(m)) for m in combo) == 4:
                out.add(combo)
    return out


def test_fourteen_families():
    fams = fourteen_families()
    assert len(fams) == 14
    assert len({e.g for e in fams}) == 14
    for e in fams:
        assert e.f == DWORK_F
        assert e.g.degree == 4 and e.g(1) != 0 and e.g(0) == 1
    got = {tuple(sorted(m for m, k in cyclotomic_factorization(e.g).items() for _ in range(k))) for e in fams}
    assert got == independent_family_specs()
    by_g = {e.g: e for e in fams}
    assert by_g[cyclotomic(5)].status == "Thin"
    meta = catalog_metadata()
    assert meta["aggregate_claim"] == {"arithmetic": 7, "thin": 7}


def test_lookup_family():
    assert lookup_family(DWORK_F, DWORK_G).status == "Thin"
    assert lookup_family(X**4 + 1, DWORK_G) is None


# --- finite closure -----------------------------------------------------------


def test_closure_examples():
    assert finite_closure(build_group(X**2 + 1, X**2 - 1)) == FiniteOrder(8)
    assert finite_closure(build_group(X - 1, X + 1), cap=10) == FiniteOrder(2)
    assert isinstance(finite_closure(build_group(DWORK_F, DWORK_G), cap=10_000), ExceededCap)


@pytest.mark.parametrize(
    "f,g",
    [
        (X**2 + 1, X**2 - 1),
        (cyclotomic(3), cyclotomic(4)),
        (cyclotomic(3), cyclotomic(6)),
        (cyclotomic(1) * cyclotomic(3), cyclotomic(2) * cyclotomic(4)),
        (cyclotomic(1) * cyclotomic(2) ** 2, cyclotomic(3) * cyclotomic(1)),
    ],
)
def test_closure_against_naive(f, g):
    H = build_group(f, g)
    ref = naive_closure([H.A, H.B], 5000)
    got = finite_closure(H, cap=5000)
    if ref is None:
        assert isinstance(got, ExceededCap)
    else:
        assert got == FiniteOrder(ref)


# --- classification -----------------------------------------------------------


def test_dwork_classification():
    rep = zariski_classification(PL(0, 0, 0, 0), PL("1/5", "2/5", "3/5", "4/5"))
    assert (rep.verdict, rep.n, rep.c, rep.arithmeticity) == ("Symplectic", 4, 1, "KnownThin")
    H = build_group(DWORK_F, DWORK_G)
    assert H.A.T @ rep.omega @ H.A == rep.omega
    js = rep.to_json()
    assert js["verdict"] == "Symplectic" and js["c"] == "1/1"
    assert js["arithmeticity"]["status"] == "KnownThin"


def test_finite_classification():
    rep = zariski_classification(PL("1/4", "3/4"), PL(0, "1/2"))
    assert rep.verdict == "Finite"
    assert rep.interlacing_pattern == "βαβα"


def test_arithmetic_classification():
    rep = zariski_classification(PL("1/5", "2/5", "3/5", "4/5"), PL("1/2", "1/2", "1/4", "3/4"))
    assert (rep.verdict, rep.arithmeticity) == ("Symplectic", "ArithmeticByCriterion")


def test_reducible_and_imprimitive_verdicts():
    rep = classify_polys((X - 1) * (X + 1), (X - 1) ** 2)
    assert rep.verdict == "Reducible" and rep.gcd == X - 1
    rep = classify_polys((X**2 - 1) ** 2, (X**2 + 1) ** 2)
    assert rep.verdict == "Imprimitive"
    assert (rep.imprimitivity.k, rep.imprimitivity.f1, rep.imprimitivity.g1) == (2, (X - 1) ** 2, (X + 1) ** 2)


def test_open_sp6_case_has_no_verdict_on_arithmeticity():
    rep = classify_polys((X - 1) ** 6, cyclotomic(7))
    assert rep.verdict == "Symplectic"
    assert rep.arithmeticity == "Undetermined"
    assert "generators" in rep.to_json(generators=True)


@settings(max_examples=40, deadline=None)
@given(SEEDS)
def test_verdicts_consistent_with_witnesses(seed):
    f, g = random_pair(6, random.Random(seed))
    rep = classify_polys(f, g)
    if rep.verdict == "Reducible":
        assert rep.gcd.degree > 0
    elif rep.verdict == "Finite":
        assert interlace_check(parameters_from_poly(f), parameters_from_poly(g))[0]
    elif rep.verdict == "Imprimitive":
        assert rep.imprimitivity.k >= 2
    elif rep.verdict == "Symplectic":
        assert rep.n % 2 == 0 and rep.omega.T == rep.omega.scale(-1) and rep.omega.det() != 0
    else:
        assert rep.verdict == "Orthogonal" and rep.omega.T == rep.omega
    # deterministic
    assert classify_polys(f, g).to_json() == rep.to_json()
