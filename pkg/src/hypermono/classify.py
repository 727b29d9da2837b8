"""
Classification of hypergeometric groups with cyclotomic parameters.

The pipeline is: reducible (common root) -> finite (interlacing angles) ->
imprimitive (f, g polynomials in x^k) -> Zariski dense in O(n) or Sp(n)
according to the sign ``c = f(0)/g(0)``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from itertools import combinations_with_replacement
from typing import Any

import numpy as np

from .errors import AmbiguousForm, InconsistentClassification, NoInvariantForm, ZeroDifference
from .exactmatrix import ExactMatrix
from .exactpoly import (
    ExactPoly,
    ParameterList,
    cyclotomic,
    decimate_test,
    euler_phi,
    factor_spec,
    parse_poly,
    poly_from_parameters,
    poly_gcd,
)
from .levelt import HypergeometricGroup, build_group

__all__ = [
    "ArithmeticByCriterion",
    "ClassificationReport",
    "ExceededCap",
    "FamilyEntry",
    "FiniteOrder",
    "Imprimitive",
    "Inconclusive",
    "Primitive",
    "arithmeticity_criterion",
    "finite_closure",
    "fourteen_families",
    "interlace_check",
    "invariant_form",
    "primitivity_check",
    "zariski_classification",
]

VERDICTS = ("Reducible", "Finite", "Imprimitive", "Orthogonal", "Symplectic")
ARITHMETICITY = ("ArithmeticByCriterion", "KnownThin", "KnownArithmetic", "Undetermined")


# ---------------------------------------------------------------------------
# interlacing
# ---------------------------------------------------------------------------


def interlace_check(alpha: ParameterList, beta: ParameterList) -> tuple[bool, str]:
    """Do the two angle multisets strictly alternate around the circle?

    Returns ``(interlacing, pattern)`` with ``pattern`` the labels of the
    sorted union, e.g. ``"βαβα"``. Coincident values never interlace.
    """
    if len(alpha) != len(beta):
        raise ValueError("alpha and beta must have the same length")
    labeled = sorted([(a, 0) for a in alpha] + [(b, 1) for b in beta])
    pattern = "".join("αβ"[lab] for _, lab in labeled)
    values = [v for v, _ in labeled]
    if len(set(values)) != len(values):
        return False, pattern
    # on a circle of even length, strict alternation is the same as no two
    # neighbours (cyclically) sharing a label
    ok = all(labeled[i][1] != labeled[(i + 1) % len(labeled)][1] for i in range(len(labeled)))
    return ok, pattern


# ---------------------------------------------------------------------------
# primitivity
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Primitive:
    pass


@dataclass(frozen=True)
class Imprimitive:
    k: int
    f1: ExactPoly
    g1: ExactPoly


def primitivity_check(f: ExactPoly, g: ExactPoly) -> Primitive | Imprimitive:
    n = f.degree
    if g.degree != n:
        raise ValueError("f and g must have the same degree")
    for k in range(2, n + 1):
        if n % k:
            continue
        f1, g1 = decimate_test(f, k), decimate_test(g, k)
        if f1 is not None and g1 is not None:
            return Imprimitive(k=k, f1=f1, g1=g1)
    return Primitive()


# ---------------------------------------------------------------------------
# invariant form
# ---------------------------------------------------------------------------


def invariant_form(H: HypergeometricGroup) -> ExactMatrix:
    """The bilinear form preserved by A and B, up to scale.

    Solves ``A^T X A = X`` and ``B^T X B = X`` exactly in the ``n^2`` entries
    of ``X``. Requires ``gcd(f, g) = 1``.
    """
    if poly_gcd(H.f, H.g).degree > 0:
        raise ValueError("invariant_form requires coprime f and g")
    n = H.n
    # vec(M^T X M) = (M^T kron M^T) vec(X) for row-major vec
    rows: list[list[Fraction]] = []
    for M in (H.A, H.B):
        Mt = M.T
        for i in range(n):
            for j in range(n):
                row = []
                for p in range(n):
                    for q in range(n):
                        row.append(Mt[i, p] * M[q, j])
                row[i * n + j] -= 1
                rows.append(row)
    kernel = ExactMatrix(rows).nullspace()
    if not kernel:
        raise NoInvariantForm("no nonzero bilinear form is invariant under A and B")
    if len(kernel) > 1:
        raise AmbiguousForm(f"invariant forms span a space of dimension {len(kernel)}")
    vec = kernel[0]
    omega = ExactMatrix(vec[i * n : (i + 1) * n] for i in range(n)).primitive_integer()
    if H.c == 1 and omega.T != -omega:
        raise InconsistentClassification("c = 1 but the invariant form is not alternating")
    if H.c == -1 and omega.T != omega:
        raise InconsistentClassification("c = -1 but the invariant form is not symmetric")
    return omega


# ---------------------------------------------------------------------------
# arithmeticity
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ArithmeticByCriterion:
    difference: ExactPoly
    c_d: Fraction


@dataclass(frozen=True)
class Inconclusive:
    difference: ExactPoly
    c_d: Fraction


def arithmeticity_criterion(f: ExactPoly, g: ExactPoly) -> ArithmeticByCriterion | Inconclusive:
    """Leading coefficient test on ``f - g``: ``|c_d| <= 2`` proves finite index.

    Only meaningful in the symplectic setting (``f(0) = g(0) = 1``, primitive,
    non-interlacing, coprime); an inconclusive answer says nothing about
    thinness.
    """
    diff = f - g
    if diff.is_zero():
        raise ZeroDifference("f = g")
    if f[0] != 1 or g[0] != 1:
        raise ValueError("criterion applies only when f(0) = g(0) = 1")
    if poly_gcd(f, g).degree > 0:
        raise ValueError("criterion applies only to coprime f, g")
    if isinstance(primitivity_check(f, g), Imprimitive):
        raise ValueError("criterion applies only to primitive pairs")
    c_d = diff.leading
    if abs(c_d) <= 2:
        return ArithmeticByCriterion(diff, c_d)
    return Inconclusive(diff, c_d)


# ---------------------------------------------------------------------------
# fourteen families
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FamilyEntry:
    g_spec: str
    g: ExactPoly
    status: str
    provenance: str
    f: ExactPoly = field(default_factory=lambda: ExactPoly([1, -4, 6, -4, 1]))

    def to_json(self) -> dict[str, Any]:
        return {
            "g_spec": self.g_spec,
            "g": self.g.to_json(),
            "status": self.status,
            "provenance": self.provenance,
        }


def _load_catalog() -> dict[str, Any]:
    text = resources.files("hypermono").joinpath("data/families.json").read_text()
    return json.loads(text)


def catalog_metadata() -> dict[str, Any]:
    data = _load_catalog()
    return {k: v for k, v in data.items() if k != "overrides"}


def _cyclotomic_multisets(degree: int, min_index: int = 2) -> list[tuple[int, ...]]:
    indices = [m for m in range(min_index, 2 * degree * degree + 3) if euler_phi(m) <= degree]
    out = []
    for size in range(1, degree + 1):
        for combo in combinations_with_replacement(indices, size):
            if sum(euler_phi(m) for m in combo) == degree:
                out.append(combo)
    return out


def fourteen_families() -> list[FamilyEntry]:
    """All degree-4 cyclotomic products ``g`` with ``g(1) != 0``, paired with ``f = (x-1)^4``."""
    data = _load_catalog()
    overrides = {parse_poly(o["g_spec"]): o for o in data["overrides"]}
    f = cyclotomic(1) ** 4
    entries = []
    for combo in _cyclotomic_multisets(4):
        g = ExactPoly([1])
        for m in combo:
            g = g * cyclotomic(m)
        spec = factor_spec(g)
        if g in overrides:
            status, prov = overrides[g]["status"], overrides[g]["provenance"]
        elif isinstance(arithmeticity_criterion(f, g), ArithmeticByCriterion):
            status = "Arithmetic"
            prov = f"leading coefficient of f - g is {(f - g).leading}; |c| <= 2 gives finite index"
        else:
            status = "Unknown"
            prov = data["unknown_note"]
        entries.append(FamilyEntry(g_spec=spec, g=g, status=status, provenance=prov, f=f))
    entries.sort(key=lambda e: (sorted(_spec_key(e.g_spec)), e.g_spec))
    return entries


def _spec_key(spec: str) -> list[int]:
    out = []
    for part in spec.split("*"):
        m, _, e = part[1:].partition("^")
        out.extend([int(m)] * int(e or 1))
    return out


def lookup_family(f: ExactPoly, g: ExactPoly) -> FamilyEntry | None:
    if f != cyclotomic(1) ** 4:
        return None
    return next((e for e in fourteen_families() if e.g == g), None)


# ---------------------------------------------------------------------------
# finite closure
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FiniteOrder:
    order: int


@dataclass(frozen=True)
class ExceededCap:
    cap: int
    visited: int


_INT64_SAFE = 2**62


def finite_closure(H: HypergeometricGroup, cap: int = 100_000) -> FiniteOrder | ExceededCap:
    """Breadth-first enumeration of the group generated by A, B and their inverses.

    Group elements are integer matrices (det A, det B = +-1), hashed by their
    raw bytes. Falls back to Python integers if entries approach int64 limits.
    """
    gens_exact = [H.A, H.A.inverse(), H.B, H.B.inverse()]
    n = H.n
    gens = [np.array(G.to_int_rows(), dtype=np.int64) for G in gens_exact]
    gen_norm = max(int(np.abs(G).max()) for G in gens)
    ident = np.eye(n, dtype=np.int64)
    seen = {ident.tobytes()}
    frontier = ident[None, :, :]
    use_object = False
    while frontier.shape[0]:
        if not use_object and int(np.abs(frontier).max()) * gen_norm * n >= _INT64_SAFE:
            use_object = True
            gens = [G.astype(object) for G in gens]
            frontier = frontier.astype(object)
            seen = {tuple(np.frombuffer(k, dtype=np.int64).tolist()) for k in seen}
        new = []
        for G in gens:
            prod = frontier @ G
            for M in prod:
                key = M.tobytes() if not use_object else tuple(M.ravel().tolist())
                if key not in seen:
                    seen.add(key)
                    new.append(M)
                    if len(seen) > cap:
                        return ExceededCap(cap=cap, visited=len(seen))
        if not new:
            break
        frontier = np.array(new, dtype=object if use_object else np.int64)
    return FiniteOrder(order=len(seen))


# ---------------------------------------------------------------------------
# classification pipeline
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ClassificationReport:
    verdict: str
    n: int
    f: ExactPoly
    g: ExactPoly
    c: Fraction
    interlacing_pattern: str
    arithmeticity: str
    provenance: str
    gcd: ExactPoly | None = None
    imprimitivity: Imprimitive | None = None
    omega: ExactMatrix | None = None
    group: HypergeometricGroup | None = None

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValueError(f"unknown verdict {self.verdict}")
        if self.arithmeticity not in ARITHMETICITY:
            raise ValueError(f"unknown arithmeticity status {self.arithmeticity}")

    def to_json(self, generators: bool = False) -> dict[str, Any]:
        out: dict[str, Any] = {
            "verdict": self.verdict,
            "n": self.n,
            "f": factor_spec(self.f),
            "g": factor_spec(self.g),
            "c": f"{self.c.numerator}/{self.c.denominator}",
            "interlacing_pattern": self.interlacing_pattern,
            "omega": self.omega.to_json() if self.omega is not None else None,
            "arithmeticity": {"status": self.arithmeticity, "provenance": self.provenance},
        }
        if self.gcd is not None:
            out["gcd"] = self.gcd.to_json()
        if self.imprimitivity is not None:
            imp = self.imprimitivity
            out["imprimitivity"] = {"k": imp.k, "f1": imp.f1.to_json(), "g1": imp.g1.to_json()}
        if generators and self.group is not None:
            out["generators"] = {"A": self.group.A.to_json(), "B": self.group.B.to_json()}
        return out


def _arithmeticity(f: ExactPoly, g: ExactPoly, verdict: str) -> tuple[str, str]:
    if verdict != "Symplectic":
        if verdict == "Orthogonal":
            return "Undetermined", "the leading-coefficient criterion covers only the symplectic case"
        return "Undetermined", f"not applicable to verdict {verdict}"
    crit = arithmeticity_criterion(f, g)
    if isinstance(crit, ArithmeticByCriterion):
        return (
            "ArithmeticByCriterion",
            f"f - g = {crit.difference} has leading coefficient {crit.c_d}, |c| <= 2",
        )
    fam = lookup_family(f, g)
    if fam is not None and fam.status == "Thin":
        return "KnownThin", fam.provenance
    if fam is not None and fam.status == "Arithmetic":
        return "KnownArithmetic", fam.provenance
    return (
        "Undetermined",
        f"leading coefficient {crit.c_d} of f - g exceeds 2 in absolute value; "
        "no general thinness criterion is available",
    )


def zariski_classification(alpha: ParameterList, beta: ParameterList) -> ClassificationReport:
    if len(alpha) != len(beta):
        raise ValueError("alpha and beta must have the same length")
    f = poly_from_parameters(alpha)
    g = poly_from_parameters(beta)
    n = f.degree
    interlacing, pattern = interlace_check(alpha, beta)
    k = poly_gcd(f, g)
    base = dict(n=n, f=f, g=g, c=f[0] / g[0], interlacing_pattern=pattern)
    if k.degree > 0:
        return ClassificationReport(
            verdict="Reducible", gcd=k,
            arithmeticity="Undetermined", provenance="not applicable to verdict Reducible", **base,
        )
    H = build_group(f, g)
    if interlacing:
        return ClassificationReport(
            verdict="Finite", group=H,
            arithmeticity="Undetermined", provenance="not applicable to verdict Finite", **base,
        )
    prim = primitivity_check(f, g)
    if isinstance(prim, Imprimitive):
        return ClassificationReport(
            verdict="Imprimitive", imprimitivity=prim, group=H,
            arithmeticity="Undetermined", provenance="not applicable to verdict Imprimitive", **base,
        )
    omega = invariant_form(H)
    if H.c == -1:
        verdict = "Orthogonal"
    elif H.c == 1:
        if n % 2:
            raise InconsistentClassification(f"symplectic verdict with odd n = {n}")
        verdict = "Symplectic"
    else:
        raise InconsistentClassification(f"c = {H.c} is not +-1")
    if omega.det() == 0:
        raise InconsistentClassification("invariant form is degenerate")
    status, prov = _arithmeticity(f, g, verdict)
    return ClassificationReport(
        verdict=verdict, omega=omega, group=H, arithmeticity=status, provenance=prov, **base
    )


def classify_polys(f: ExactPoly, g: ExactPoly) -> ClassificationReport:
    from .exactpoly import parameters_from_poly

    return zariski_classification(parameters_from_poly(f), parameters_from_poly(g))
