"""
The hypergeometric group generated by two companion matrices, its
irreducibility, and recovery of the companion normal form from an arbitrary
pair of matrices whose quotient is a reflection.

Conventions: ``A`` is the companion matrix of ``f`` (image of the loop around
infinity), ``B`` that of ``g`` (the loop around 0 maps to ``B^-1``), and the
loop around 1 maps to the reflection ``C = A^-1 B``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    DegreeMismatch,
    EqualPolynomials,
    InconsistentClassification,
    NotMonic,
    NotReflection,
    SharedEigenvalue,
)
from .exactmatrix import ExactMatrix
from .exactpoly import ExactPoly, poly_gcd, resultant

__all__ = [
    "HypergeometricGroup",
    "Irreducible",
    "NormalForm",
    "Reducible",
    "build_group",
    "companion_matrix",
    "irreducibility_check",
    "levelt_normal_form",
    "quotient_action",
]


def companion_matrix(f: ExactPoly) -> ExactMatrix:
    """Matrix of multiplication by x on Q[x]/(f) in the basis 1, x, ..., x^(n-1).

    Ones on the subdiagonal, last column ``(-a_0, ..., -a_{n-1})``.
    """
    if not f.is_monic():
        raise NotMonic(f"{f} is not monic")
    n = f.degree
    if n < 1:
        raise NotMonic("companion matrix needs degree >= 1")
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i in range(1, n):
        rows[i][i - 1] = Fraction(1)
    for i in range(n):
        rows[i][n - 1] = -f[i]
    return ExactMatrix(rows)


@dataclass(frozen=True)
class HypergeometricGroup:
    f: ExactPoly
    g: ExactPoly
    A: ExactMatrix
    B: ExactMatrix
    C: ExactMatrix
    c: Fraction

    @property
    def n(self) -> int:
        return self.f.degree

    @property
    def exceptional_eigenvalue(self) -> Fraction:
        """The eigenvalue of the reflection C off its fixed hyperplane, ``det C``."""
        return self.C.det()

    def generators(self) -> dict[str, ExactMatrix]:
        return {"A": self.A, "B": self.B}


def build_group(f: ExactPoly, g: ExactPoly) -> HypergeometricGroup:
    if not f.is_monic() or not g.is_monic():
        raise NotMonic(f"f = {f} and g = {g} must both be monic")
    if f.degree != g.degree:
        raise DegreeMismatch(f"deg f = {f.degree} but deg g = {g.degree}")
    if f == g:
        raise EqualPolynomials("f = g makes C the identity, not a reflection")
    A = companion_matrix(f)
    B = companion_matrix(g)
    C = A.inverse() @ B
    n = f.degree
    if (C - ExactMatrix.identity(n)).rank() != 1:
        raise InconsistentClassification("C - I must have rank exactly 1")
    return HypergeometricGroup(f=f, g=g, A=A, B=B, C=C, c=f[0] / g[0])


# ---------------------------------------------------------------------------
# irreducibility
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Irreducible:
    pass


@dataclass(frozen=True)
class Reducible:
    """gcd ``k`` of f and g, and the (equal) actions of A and B on V / (k)."""

    k: ExactPoly
    quotient_A: ExactMatrix
    quotient_B: ExactMatrix

    @property
    def actions_coincide(self) -> bool:
        return self.quotient_A == self.quotient_B


def _reduce_coords(p: ExactPoly, k: ExactPoly) -> list[Fraction]:
    r = p % k
    return [r[i] for i in range(k.degree)]


def quotient_action(H: HypergeometricGroup, k: ExactPoly) -> tuple[ExactMatrix, ExactMatrix]:
    """Matrices of A and B on ``Q[t]/(f)`` modulo the ideal generated by ``k``.

    The quotient is identified with ``Q[t]/(k)`` in the basis ``1, ..., t^(d-1)``.
    """
    d = k.degree
    n = H.n
    if d < 1 or not k.divides(H.f):
        raise ValueError("k must be a proper divisor of f")
    out = []
    for M in (H.A, H.B):
        cols = []
        for j in range(d):
            e = [Fraction(int(i == j)) for i in range(n)]
            image = ExactPoly(M.apply(e))
            cols.append(_reduce_coords(image, k))
        out.append(ExactMatrix.from_columns(cols))
    return out[0], out[1]


def irreducibility_check(H: HypergeometricGroup) -> Irreducible | Reducible:
    k = poly_gcd(H.f, H.g)
    if k.degree == 0:
        return Irreducible()
    qa, qb = quotient_action(H, k)
    return Reducible(k=k, quotient_A=qa, quotient_B=qb)


# ---------------------------------------------------------------------------
# normal form
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NormalForm:
    P: ExactMatrix
    A: ExactMatrix
    B: ExactMatrix
    cyclic_vector: tuple[Fraction, ...]


def levelt_normal_form(a: ExactMatrix, b: ExactMatrix) -> NormalForm:
    """Conjugate ``(a, b)`` to the companion pair of their characteristic polynomials.

    With ``W = ker(a - b)`` and ``X`` the set of ``v`` with ``a^i v`` in ``W``
    for ``i = 0..n-2``, any nonzero ``v`` in ``X`` is cyclic for ``a``; the
    basis ``v, av, ..., a^(n-1) v`` puts both matrices in companion form.
    """
    n = a.size
    if b.size != n:
        raise DegreeMismatch("a and b must have the same size")
    fa, fb = a.charpoly(), b.charpoly()
    if resultant(fa, fb) == 0:
        raise SharedEigenvalue(f"char polys {fa} and {fb} have a common root")
    D = a - b
    if D.rank() != 1:
        raise NotReflection(f"rank(a - b) = {D.rank()}, expected 1")
    # stack (a - b) a^i for i = 0..n-2; its kernel is X
    stacked = []
    power = ExactMatrix.identity(n)
    for _ in range(max(n - 1, 1)):
        stacked.extend((D @ power).rows)
        power = a @ power
    if n == 1:
        kernel = [(Fraction(1),)]
    else:
        kernel = ExactMatrix(stacked).nullspace()
    v = kernel[0]
    basis = [v]
    for _ in range(n - 1):
        basis.append(a.apply(basis[-1]))
    P = ExactMatrix.from_columns(basis)
    if P.det() == 0:
        # cannot happen under the hypotheses; the proof shows v is cyclic
        raise InconsistentClassification("vector from X is not cyclic for a")
    Pinv = P.inverse()
    return NormalForm(P=P, A=Pinv @ a @ P, B=Pinv @ b @ P, cyclic_vector=v)
