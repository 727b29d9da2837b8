"""
Exact polynomials over the rationals, cyclotomic polynomials and rational
parameter lists.

A polynomial is a dense tuple of :class:`fractions.Fraction` coefficients,
constant term first, so ``ExactPoly([1, -4, 6, -4, 1])`` is ``(x - 1)^4``.
Parameter lists hold angles ``k/m`` in ``[0, 1)``; the angle ``a`` stands for
the root of unity ``exp(2 pi i a)``.
"""
from __future__ import annotations

import re
from collections import Counter
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence

from .errors import GrammarError, NotCyclotomicProduct, NotGaloisStable

__all__ = [
    "ExactPoly",
    "ParameterList",
    "cyclotomic",
    "cyclotomic_factorization",
    "decimate_test",
    "euler_phi",
    "parameters_from_poly",
    "parse_angles",
    "parse_poly",
    "poly_from_factorization",
    "poly_from_parameters",
    "poly_gcd",
    "resultant",
]

Number = int | Fraction


class ExactPoly:
    """Immutable dense polynomial with exact rational coefficients.

    >>> ExactPoly([1, -4, 6, -4, 1])
    ExactPoly('x^4 - 4x^3 + 6x^2 - 4x + 1')
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Number] = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("ExactPoly is immutable")

    # -- constructors -----------------------------------------------------

    @classmethod
    def x(cls) -> ExactPoly:
        return cls([0, 1])

    @classmethod
    def monomial(cls, degree: int, coeff: Number = 1) -> ExactPoly:
        return cls([0] * degree + [coeff])

    @classmethod
    def from_roots_of_unity_exponents(cls, m: int) -> ExactPoly:
        """``x^m - 1``."""
        return cls([-1] + [0] * (m - 1) + [1])

    # -- basic properties -------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree; the zero polynomial has degree -1."""
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def int_coeffs(self) -> list[int]:
        if not self.is_integral():
            raise ValueError(f"{self} has non-integer coefficients")
        return [int(c) for c in self.coeffs]

    def __getitem__(self, i: int) -> Fraction:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def __call__(self, x):
        acc = 0 * x if not isinstance(x, (int, Fraction)) else Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    # -- arithmetic -------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = ExactPoly([other])
        if not isinstance(other, ExactPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other: ExactPoly | Number) -> ExactPoly:
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return ExactPoly(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self) -> ExactPoly:
        return ExactPoly(-c for c in self.coeffs)

    def __sub__(self, other: ExactPoly | Number) -> ExactPoly:
        return self + (-_as_poly(other))

    def __rsub__(self, other: Number) -> ExactPoly:
        return _as_poly(other) - self

    def __mul__(self, other: ExactPoly | Number) -> ExactPoly:
        other = _as_poly(other)
        if self.is_zero() or other.is_zero():
            return ExactPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return ExactPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> ExactPoly:
        if e < 0:
            raise ValueError("negative power")
        result, base = ExactPoly([1]), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other: ExactPoly) -> tuple[ExactPoly, ExactPoly]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return ExactPoly(), self
        quot = [Fraction(0)] * (dq + 1)
        lead = other.coeffs[-1]
        for k in range(dq, -1, -1):
            q = rem[k + other.degree] / lead
            quot[k] = q
            if q:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= q * b
        return ExactPoly(quot), ExactPoly(rem[: other.degree])

    def __floordiv__(self, other: ExactPoly) -> ExactPoly:
        return divmod(self, other)[0]

    def __mod__(self, other: ExactPoly) -> ExactPoly:
        return divmod(self, other)[1]

    def exact_div(self, other: ExactPoly) -> ExactPoly:
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ValueError(f"{other} does not divide {self}")
        return q

    def divides(self, other: ExactPoly) -> bool:
        """True if ``self`` divides ``other``."""
        return (other % self).is_zero()

    def monic(self) -> ExactPoly:
        if self.is_zero():
            return self
        lead = self.coeffs[-1]
        return ExactPoly(c / lead for c in self.coeffs)

    def compose_power(self, k: int) -> ExactPoly:
        """``p(x^k)``."""
        out = [Fraction(0)] * (self.degree * k + 1 if self.coeffs else 0)
        for i, c in enumerate(self.coeffs):
            out[i * k] = c
        return ExactPoly(out)

    # -- display ----------------------------------------------------------

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            mono = "" if i == 0 else "x" if i == 1 else f"x^{i}"
            coef = "" if (a == 1 and mono) else str(a)
            body = coef + mono
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(f" {sign} {body}")
        return "".join(parts)

    def __repr__(self) -> str:
        return f"ExactPoly('{self}')"

    def to_json(self) -> list[str]:
        return [_frac_str(c) for c in self.coeffs]


def _as_poly(p: ExactPoly | Number) -> ExactPoly:
    return p if isinstance(p, ExactPoly) else ExactPoly([p])


def _frac_str(c: Fraction) -> str:
    return f"{c.numerator}/{c.denominator}"


# ---------------------------------------------------------------------------
# cyclotomic polynomials
# ---------------------------------------------------------------------------


def euler_phi(m: int) -> int:
    result, k, p = m, m, 2
    while p * p <= k:
        if k % p == 0:
            while k % p == 0:
                k //= p
            result -= result // p
        p += 1
    if k > 1:
        result -= result // k
    return result


@lru_cache(maxsize=None)
def cyclotomic(m: int) -> ExactPoly:
    """The m-th cyclotomic polynomial, by exact division of ``x^m - 1``.

    >>> cyclotomic(12)
    ExactPoly('x^4 - x^2 + 1')
    """
    if m < 1:
        raise ValueError("cyclotomic index must be positive")
    p = ExactPoly.from_roots_of_unity_exponents(m)
    for d in range(1, m):
        if m % d == 0:
            p = p.exact_div(cyclotomic(d))
    return p


def _indices_with_phi_at_most(d: int) -> list[int]:
    # phi(m) >= sqrt(m / 2), so phi(m) <= d forces m <= 2 d^2.
    return [m for m in range(1, 2 * d * d + 3) if euler_phi(m) <= d]


def cyclotomic_factorization(f: ExactPoly) -> dict[int, int]:
    """Write a monic integer polynomial as a product of cyclotomic polynomials.

    Returns ``{m: multiplicity}``; raises :class:`NotCyclotomicProduct` when
    some irreducible factor is not cyclotomic.
    """
    if f.is_zero() or not f.is_monic() or not f.is_integral():
        raise NotCyclotomicProduct(f"{f} is not a monic integer polynomial")
    if f.degree == 0:
        return {}
    if abs(f[0]) != 1:
        raise NotCyclotomicProduct(f"{f}: constant term is not +-1")
    rest = f
    factors: dict[int, int] = {}
    for m in _indices_with_phi_at_most(f.degree):
        phi_m = cyclotomic(m)
        if phi_m.degree > rest.degree:
            continue
        while True:
            q, r = divmod(rest, phi_m)
            if not r.is_zero():
                break
            factors[m] = factors.get(m, 0) + 1
            rest = q
        if rest.degree == 0:
            break
    if rest != ExactPoly([1]):
        raise NotCyclotomicProduct(f"{f} has a non-cyclotomic factor {rest}")
    return dict(sorted(factors.items()))


def poly_from_factorization(factors: dict[int, int] | Iterable[tuple[int, int]]) -> ExactPoly:
    items = factors.items() if isinstance(factors, dict) else factors
    p = ExactPoly([1])
    for m, e in items:
        p = p * cyclotomic(m) ** e
    return p


def poly_gcd(f: ExactPoly, g: ExactPoly) -> ExactPoly:
    """Monic gcd over the rationals (Euclid)."""
    a, b = f, g
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def resultant(f: ExactPoly, g: ExactPoly) -> Fraction:
    """Resultant via the determinant of the Sylvester matrix."""
    from .exactmatrix import ExactMatrix

    m, n = f.degree, g.degree
    if m < 0 or n < 0:
        return Fraction(0)
    if m == 0 and n == 0:
        return Fraction(1)
    size = m + n
    rows = []
    for i in range(n):
        row = [Fraction(0)] * size
        for j, c in enumerate(reversed(f.coeffs)):
            row[i + j] = c
        rows.append(row)
    for i in range(m):
        row = [Fraction(0)] * size
        for j, c in enumerate(reversed(g.coeffs)):
            row[i + j] = c
        rows.append(row)
    return ExactMatrix(rows).det()


def decimate_test(f: ExactPoly, k: int) -> ExactPoly | None:
    """Return ``f1`` with ``f(x) = f1(x^k)``, or ``None`` if no such ``f1``."""
    if k < 2:
        raise ValueError("k must be at least 2")
    if any(c != 0 and i % k for i, c in enumerate(f.coeffs)):
        return None
    return ExactPoly(f.coeffs[::k])


# ---------------------------------------------------------------------------
# parameter lists
# ---------------------------------------------------------------------------


def _reduce_angle(a) -> Fraction:
    a = Fraction(a)
    return a - (a.numerator // a.denominator)


class ParameterList:
    """Sorted multiset of rational angles in ``[0, 1)``.

    Angles are reduced modulo 1 on construction, so ``ParameterList([1, 1/2])``
    and ``ParameterList([0, 1/2])`` compare equal.
    """

    __slots__ = ("angles",)

    def __init__(self, angles: Iterable[Number | str]):
        reduced = sorted(_reduce_angle(Fraction(a)) for a in angles)
        if not reduced:
            raise ValueError("empty parameter list")
        object.__setattr__(self, "angles", tuple(reduced))

    def __setattr__(self, name, value):
        raise AttributeError("ParameterList is immutable")

    @property
    def n(self) -> int:
        return len(self.angles)

    def __len__(self) -> int:
        return len(self.angles)

    def __iter__(self):
        return iter(self.angles)

    def __eq__(self, other) -> bool:
        return isinstance(other, ParameterList) and self.angles == other.angles

    def __hash__(self) -> int:
        return hash(self.angles)

    def __repr__(self) -> str:
        return f"ParameterList({self})"

    def __str__(self) -> str:
        return ",".join(str(a) for a in self.angles)

    @classmethod
    def parse(cls, text: str) -> ParameterList:
        return cls(parse_angles(text))

    def floats(self) -> list[float]:
        return [float(a) for a in self.angles]


def poly_from_parameters(p: ParameterList | Sequence[Number]) -> ExactPoly:
    """Monic integer polynomial whose roots are ``exp(2 pi i a)`` for ``a`` in ``p``."""
    if not isinstance(p, ParameterList):
        p = ParameterList(p)
    by_den: dict[int, Counter] = {}
    for a in p.angles:
        by_den.setdefault(a.denominator, Counter())[a.numerator] += 1
    factors: dict[int, int] = {}
    for m, counts in sorted(by_den.items()):
        units = [k for k in range(m) if gcd(k, m) == 1] if m > 1 else [0]
        mults = {counts.get(k, 0) for k in units}
        if len(mults) != 1:
            missing = [f"{k}/{m}" for k in units if counts.get(k, 0) != max(mults)]
            raise NotGaloisStable(
                f"angles with denominator {m} are not closed under conjugation "
                f"(unbalanced: {', '.join(missing)})"
            )
        factors[m] = mults.pop()
    return poly_from_factorization(factors)


def parameters_from_poly(f: ExactPoly) -> ParameterList:
    """Inverse of :func:`poly_from_parameters`."""
    angles: list[Fraction] = []
    for m, e in cyclotomic_factorization(f).items():
        units = [k for k in range(m) if gcd(k, m) == 1] if m > 1 else [0]
        angles.extend(Fraction(k, m) for k in units for _ in range(e))
    return ParameterList(angles)


# ---------------------------------------------------------------------------
# text grammar
# ---------------------------------------------------------------------------

_FACTOR_RE = re.compile(r"^C(\d+)(?:\^(\d+))?$")


def parse_angles(text: str) -> list[Fraction]:
    """Parse ``"1/5,2/5,3/5,4/5"`` into fractions (not yet reduced mod 1)."""
    items = [t.strip() for t in text.split(",")]
    if not items or any(not t for t in items):
        raise GrammarError(f"bad angle list {text!r}: expected e.g. '0,0,1/2'")
    try:
        return [Fraction(t) for t in items]
    except (ValueError, ZeroDivisionError) as exc:
        raise GrammarError(f"bad angle list {text!r}: {exc}") from None


def parse_poly(text: str) -> ExactPoly:
    """Parse ``"C2^2*C4"`` or an ascending integer list ``"[1,-4,6,-4,1]"``."""
    s = text.replace(" ", "")
    if s.startswith("["):
        if not s.endswith("]"):
            raise GrammarError(f"bad coefficient list {text!r}")
        body = s[1:-1]
        try:
            coeffs = [int(t) for t in body.split(",")] if body else []
        except ValueError:
            raise GrammarError(f"coefficients must be integers: {text!r}") from None
        return ExactPoly(coeffs)
    factors: dict[int, int] = {}
    for part in s.split("*"):
        m = _FACTOR_RE.match(part)
        if not m or int(m.group(1)) < 1:
            raise GrammarError(
                f"bad polynomial spec {text!r}: expected 'C<m>[^e]*...' or '[a0,a1,...]'"
            )
        idx, e = int(m.group(1)), int(m.group(2) or 1)
        factors[idx] = factors.get(idx, 0) + e
    return poly_from_factorization(factors)


def factor_spec(f: ExactPoly) -> str:
    """Inverse of the cyclotomic-product branch of :func:`parse_poly`."""
    fac = cyclotomic_factorization(f)
    if not fac:
        return "1"
    return "*".join(f"C{m}" if e == 1 else f"C{m}^{e}" for m, e in fac.items())
