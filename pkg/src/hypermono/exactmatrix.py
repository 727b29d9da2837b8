"""
Square and rectangular matrices with exact rational entries.

Rank, determinant and kernel go through fraction-free (Bareiss) elimination on
the integer matrix obtained by clearing row denominators, so no intermediate
step ever leaves the integers.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .exactpoly import ExactPoly

__all__ = ["ExactMatrix", "fraction_free_echelon"]


def fraction_free_echelon(rows: list[list[int]]) -> tuple[list[list[int]], list[int], int]:
    """Bareiss row echelon form of an integer matrix.

    Returns ``(echelon_rows, pivot_columns, sign)`` where ``sign`` tracks row
    swaps. Every division performed is exact.
    """
    a = [list(r) for r in rows]
    m = len(a)
    ncols = len(a[0]) if a else 0
    pivots: list[int] = []
    sign = 1
    prev = 1
    r = 0
    for c in range(ncols):
        if r == m:
            break
        p = next((i for i in range(r, m) if a[i][c] != 0), None)
        if p is None:
            continue
        if p != r:
            a[r], a[p] = a[p], a[r]
            sign = -sign
        piv = a[r][c]
        for i in range(r + 1, m):
            ai = a[i]
            f = ai[c]
            for j in range(c, ncols):
                ai[j] = (piv * ai[j] - f * a[r][j]) // prev
        # entries left of the pivot column in lower rows are already zero
        prev = piv
        pivots.append(c)
        r += 1
    return a, pivots, sign


class ExactMatrix:
    """Immutable matrix of Fractions, stored row-major as nested tuples."""

    __slots__ = ("rows", "_hash")

    def __init__(self, rows: Iterable[Iterable[int | Fraction | str]]):
        rs = tuple(tuple(x if type(x) is Fraction else Fraction(x) for x in row) for row in rows)
        if rs and any(len(r) != len(rs[0]) for r in rs):
            raise ValueError("ragged matrix")
        object.__setattr__(self, "rows", rs)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("ExactMatrix is immutable")

    # -- constructors -----------------------------------------------------

    @classmethod
    def identity(cls, n: int) -> ExactMatrix:
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, nrows: int, ncols: int | None = None) -> ExactMatrix:
        return cls([[0] * (nrows if ncols is None else ncols) for _ in range(nrows)])

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence[Fraction]]) -> ExactMatrix:
        return cls(zip(*cols))

    @classmethod
    def from_json(cls, data: Sequence[Sequence[str | int]]) -> ExactMatrix:
        return cls(data)

    # -- shape / access ---------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), (len(self.rows[0]) if self.rows else 0)

    @property
    def size(self) -> int:
        n, m = self.shape
        if n != m:
            raise ValueError("matrix is not square")
        return n

    def is_square(self) -> bool:
        n, m = self.shape
        return n == m

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[tuple[Fraction, ...]]:
        return [self.column(j) for j in range(self.shape[1])]

    def __eq__(self, other) -> bool:
        return isinstance(other, ExactMatrix) and self.rows == other.rows

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash(self.rows)
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in r) for r in self.rows)
        return f"ExactMatrix([{body}])"

    def to_json(self) -> list[list[str]]:
        return [[f"{x.numerator}/{x.denominator}" for x in r] for r in self.rows]

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for r in self.rows for x in r)

    def to_int_rows(self) -> list[list[int]]:
        if not self.is_integral():
            raise ValueError("matrix has non-integer entries")
        return [[int(x) for x in r] for r in self.rows]

    # -- arithmetic -------------------------------------------------------

    @property
    def T(self) -> ExactMatrix:
        return ExactMatrix(zip(*self.rows)) if self.rows else self

    def __add__(self, other: ExactMatrix) -> ExactMatrix:
        return ExactMatrix(
            [a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)
        )

    def __sub__(self, other: ExactMatrix) -> ExactMatrix:
        return ExactMatrix(
            [a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)
        )

    def __neg__(self) -> ExactMatrix:
        return ExactMatrix([-a for a in r] for r in self.rows)

    def scale(self, c: int | Fraction) -> ExactMatrix:
        c = Fraction(c)
        return ExactMatrix([c * a for a in r] for r in self.rows)

    def _scaled_ints(self) -> tuple[list[list[int]], int]:
        d = lcm(1, *(x.denominator for r in self.rows for x in r))
        return [[x.numerator * (d // x.denominator) for x in r] for r in self.rows], d

    def __matmul__(self, other: ExactMatrix) -> ExactMatrix:
        # integer products over a common denominator; far cheaper than Fraction sums
        a, da = self._scaled_ints()
        b, db = other._scaled_ints()
        cols = list(zip(*b))
        d = da * db
        return ExactMatrix(
            [Fraction(sum(x * y for x, y in zip(r, c)), d) for c in cols] for r in a
        )

    def apply(self, v: Sequence[Fraction]) -> tuple[Fraction, ...]:
        v = [Fraction(x) for x in v]
        dv = lcm(1, *(x.denominator for x in v))
        iv = [x.numerator * (dv // x.denominator) for x in v]
        a, da = self._scaled_ints()
        return tuple(Fraction(sum(x * y for x, y in zip(r, iv)), da * dv) for r in a)

    def __pow__(self, e: int) -> ExactMatrix:
        if e < 0:
            return self.inverse() ** (-e)
        result, base = ExactMatrix.identity(self.size), self
        while e:
            if e & 1:
                result = result @ base
            base = base @ base
            e >>= 1
        return result

    def trace(self) -> Fraction:
        return sum((self.rows[i][i] for i in range(self.size)), Fraction(0))

    # -- elimination ------------------------------------------------------

    def _integer_rows(self) -> tuple[list[list[int]], Fraction]:
        """Rows scaled to integers and the product of the scale factors."""
        out, scale = [], Fraction(1)
        for r in self.rows:
            d = lcm(*(x.denominator for x in r)) if r else 1
            out.append([int(x * d) for x in r])
            scale *= d
        return out, scale

    def det(self) -> Fraction:
        n = self.size
        if n == 0:
            return Fraction(1)
        ints, scale = self._integer_rows()
        ech, pivots, sign = fraction_free_echelon(ints)
        if len(pivots) < n:
            return Fraction(0)
        # in Bareiss form the last pivot is the determinant of the scaled matrix
        return Fraction(sign * ech[n - 1][n - 1]) / scale

    def rank(self) -> int:
        if not self.rows:
            return 0
        ints, _ = self._integer_rows()
        return len(fraction_free_echelon(ints)[1])

    def nullspace(self) -> list[tuple[Fraction, ...]]:
        """Basis of the right kernel, in reduced form.

        Each basis vector has a 1 in one free column and 0 in the other free
        columns; the vectors are ordered by that free column.
        """
        nrows, ncols = self.shape
        if nrows == 0:
            return [tuple(Fraction(int(i == j)) for i in range(ncols)) for j in range(ncols)]
        ints, _ = self._integer_rows()
        ech, pivots, _ = fraction_free_echelon(ints)
        free = [c for c in range(ncols) if c not in pivots]
        basis = []
        for fc in free:
            v = [Fraction(0)] * ncols
            v[fc] = Fraction(1)
            for r in range(len(pivots) - 1, -1, -1):
                pc = pivots[r]
                s = sum((ech[r][j] * v[j] for j in range(pc + 1, ncols)), Fraction(0))
                v[pc] = -s / ech[r][pc]
            basis.append(tuple(v))
        return basis

    def inverse(self) -> ExactMatrix:
        n = self.size
        aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(self.rows)]
        ints = []
        for r in aug:
            d = lcm(*(x.denominator for x in r))
            ints.append([int(x * d) for x in r])
        ech, pivots, _ = fraction_free_echelon(ints)
        if pivots[:n] != list(range(n)):
            raise ZeroDivisionError("matrix is singular")
        # back substitution on the integer echelon form
        sol = [[Fraction(0)] * n for _ in range(n)]
        for r in range(n - 1, -1, -1):
            for j in range(n):
                s = Fraction(ech[r][n + j])
                for k in range(r + 1, n):
                    if ech[r][k]:
                        s -= ech[r][k] * sol[k][j]
                sol[r][j] = s / ech[r][r]
        return ExactMatrix(sol)

    def charpoly(self) -> ExactPoly:
        """Characteristic polynomial ``det(t I - M)`` (Faddeev-LeVerrier)."""
        n = self.size
        coeffs = [Fraction(0)] * (n + 1)
        coeffs[n] = Fraction(1)
        ident = ExactMatrix.identity(n)
        m_k = ExactMatrix.zeros(n)
        for k in range(1, n + 1):
            m_k = self @ m_k + ident.scale(coeffs[n - k + 1])
            coeffs[n - k] = -(self @ m_k).trace() / k
        return ExactPoly(coeffs)

    def primitive_integer(self) -> ExactMatrix:
        """Scale to integer entries with content 1, first nonzero entry positive."""
        flat = [x for r in self.rows for x in r]
        nz = [x for x in flat if x != 0]
        if not nz:
            return self
        d = lcm(*(x.denominator for x in nz))
        ints = [int(x * d) for x in flat]
        g = 0
        for v in ints:
            g = gcd(g, v)
        if nz[0] < 0:
            g = -g
        ncols = self.shape[1]
        vals = [v // g for v in ints]
        return ExactMatrix(vals[i : i + ncols] for i in range(0, len(vals), ncols))
