"""
Numeric monodromy of the hypergeometric equation and its comparison with the
exact companion-matrix model.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

import numpy as np
from scipy.optimize import linear_sum_assignment

from ..errors import EigenvalueMismatch, ValidationFailed
from ..exactpoly import ExactPoly, ParameterList, poly_from_parameters
from .continuation import big_loop, continue_along, loop_around
from .systems import hypergeometric_system

__all__ = [
    "CrossValidation",
    "NumericMonodromy",
    "cross_validate",
    "match_eigenvalues",
    "numeric_monodromy",
    "validate_against",
]


def _root_of_unity(a) -> complex:
    return cmath.exp(2j * math.pi * complex(a))


def match_eigenvalues(numeric: Sequence[complex], exact: Sequence[complex]) -> list[dict[str, Any]]:
    """Pair numeric and predicted eigenvalues by minimum-cost assignment on ``|difference|``."""
    numeric = np.asarray(numeric, dtype=complex)
    exact = np.asarray(exact, dtype=complex)
    cost = np.abs(numeric[:, None] - exact[None, :])
    rows, cols = linear_sum_assignment(cost)
    # multiplicity of each predicted value decides its perturbation scale
    mult = [int(np.sum(np.abs(exact - e) < 1e-12)) for e in exact]
    table = []
    for i, j in sorted(zip(rows, cols), key=lambda rc: rc[1]):
        table.append(
            {"exact": exact[j], "numeric": numeric[i], "error": float(cost[i, j]), "multiplicity": mult[j]}
        )
    return table


@dataclass
class NumericMonodromy:
    """Monodromy matrices at the basepoint, in the basis ``(y, theta y, ...)`` normalized to ``I``.

    ``Minf`` comes from ``Minf M1 M0 = I``; ``M_big`` is an independent
    continuation around both finite singularities, and
    ``loop_relation_residual = |Minf M_big - I|``.
    """

    M0: np.ndarray
    M1: np.ndarray
    Minf: np.ndarray
    M_big: np.ndarray
    loop_relation_residual: float
    eigenvalue_report: dict[str, list[dict[str, Any]]]
    reflection_sigma2: float
    exceptional_eigenvalue: complex
    basepoint: complex
    alpha: tuple
    beta: tuple
    meta: dict = field(default_factory=dict)

    def to_json(self) -> dict[str, Any]:
        def mat(M):
            return [[[float(x.real), float(x.imag)] for x in row] for row in M]

        def eig_rows(rows):
            return [
                {
                    "exact": [float(r["exact"].real), float(r["exact"].imag)],
                    "numeric": [float(r["numeric"].real), float(r["numeric"].imag)],
                    "error": r["error"],
                    "multiplicity": r["multiplicity"],
                }
                for r in rows
            ]

        return {
            "alpha": [str(a) for a in self.alpha],
            "beta": [str(b) for b in self.beta],
            "basepoint": [self.basepoint.real, self.basepoint.imag],
            "M0": mat(self.M0),
            "M1": mat(self.M1),
            "Minf": mat(self.Minf),
            "loop_relation_residual": self.loop_relation_residual,
            "reflection_sigma2": self.reflection_sigma2,
            "exceptional_eigenvalue": [self.exceptional_eigenvalue.real, self.exceptional_eigenvalue.imag],
            "eigenvalues": {k: eig_rows(v) for k, v in self.eigenvalue_report.items()},
            "meta": self.meta,
        }


def _allowed(tol: float, multiplicity: int) -> float:
    # an eigenvalue of multiplicity m in a nonderogatory matrix moves like eps^(1/m)
    return tol if multiplicity <= 1 else tol ** (1.0 / multiplicity)


def numeric_monodromy(
    alpha: Sequence,
    beta: Sequence,
    basepoint: complex = 0.5,
    tol: float = 1e-6,
    continuation_tol: float = 1e-13,
    max_order: int | None = None,
    check: bool = True,
    vertices: int = 32,
) -> NumericMonodromy:
    """Monodromy of the hypergeometric equation by continuation from ``basepoint``.

    ``M0`` and ``M1`` come from counterclockwise circles about 0 and 1 through
    the basepoint. With ``check`` set, raises :class:`EigenvalueMismatch` if
    the spectra disagree with ``exp(2 pi i (1 - beta_j))`` for ``M0`` and
    ``exp(2 pi i alpha_j)`` for ``Minf``.
    """
    b = complex(basepoint)
    if b.imag != 0 or not 0 < b.real < 1:
        raise ValueError("basepoint must lie in the open interval (0, 1)")
    eq = hypergeometric_system(alpha, beta)
    system = eq.system()
    n = eq.n
    kw = dict(tol=continuation_tol, max_order=max_order)
    t0 = continue_along(system, loop_around(0j, b, vertices), **kw)
    t1 = continue_along(system, loop_around(1 + 0j, b, vertices), **kw)
    tb = continue_along(system, big_loop(b), **kw)
    M0, M1, Mbig = t0.matrix, t1.matrix, tb.matrix
    Minf = np.linalg.inv(M1 @ M0)
    residual = float(np.linalg.norm(Minf @ Mbig - np.eye(n), 2))

    pred0 = [_root_of_unity(1 - x) for x in eq.beta]
    predinf = [_root_of_unity(x) for x in eq.alpha]
    exc = complex(np.linalg.det(M1))
    pred_exc = _root_of_unity(sum(eq.beta) - sum(eq.alpha))
    report = {
        "M0": match_eigenvalues(np.linalg.eigvals(M0), pred0),
        "Minf": match_eigenvalues(np.linalg.eigvals(Minf), predinf),
        "M1_exceptional": [
            {"exact": pred_exc, "numeric": exc, "error": abs(exc - pred_exc), "multiplicity": 1}
        ],
    }
    sv = np.linalg.svd(M1 - np.eye(n), compute_uv=False)
    sigma2 = float(sv[1] / np.linalg.norm(M1, 2)) if n > 1 else 0.0
    result = NumericMonodromy(
        M0=M0, M1=M1, Minf=Minf, M_big=Mbig,
        loop_relation_residual=residual,
        eigenvalue_report=report,
        reflection_sigma2=sigma2,
        exceptional_eigenvalue=exc,
        basepoint=b,
        alpha=tuple(alpha), beta=tuple(beta),
        meta={
            "steps": [t0.steps, t1.steps, tb.steps],
            "max_order_used": max(t0.max_order_used, t1.max_order_used, tb.max_order_used),
            "continuation_tol": continuation_tol,
        },
    )
    if check:
        for name, rows in report.items():
            for r in rows:
                if r["error"] > _allowed(tol, r["multiplicity"]):
                    raise EigenvalueMismatch(
                        f"{name}: eigenvalue {r['numeric']:.6g} vs predicted {r['exact']:.6g} "
                        f"(error {r['error']:.2e})"
                    )
    return result


# ---------------------------------------------------------------------------
# cross validation
# ---------------------------------------------------------------------------


@dataclass
class CrossValidation:
    f: ExactPoly
    g: ExactPoly
    charpoly_inf_error: float
    charpoly_zero_inv_error: float
    reflection_sigma2: float
    loop_relation_residual: float
    tol: float
    notes: list[str]
    monodromy: NumericMonodromy

    @property
    def worst(self) -> float:
        return max(self.charpoly_inf_error, self.charpoly_zero_inv_error, self.reflection_sigma2)

    def to_json(self) -> dict[str, Any]:
        return {
            "f": self.f.to_json(),
            "g": self.g.to_json(),
            "charpoly_inf_error": self.charpoly_inf_error,
            "charpoly_zero_inv_error": self.charpoly_zero_inv_error,
            "reflection_sigma2": self.reflection_sigma2,
            "loop_relation_residual": self.loop_relation_residual,
            "tol": self.tol,
            "notes": self.notes,
        }


def _charpoly_error(M: np.ndarray, p: ExactPoly) -> float:
    numeric = np.poly(M)[::-1]  # ascending
    exact = np.array([float(p[i]) for i in range(p.degree + 1)])
    return float(np.max(np.abs(numeric - exact)))


def validate_against(mono: NumericMonodromy, f: ExactPoly, g: ExactPoly, tol: float, notes=()) -> CrossValidation:
    """Check that a numeric run satisfies the hypotheses that pin it to ``H(f, g)``.

    ``Minf`` must have characteristic polynomial ``f``, ``M0^-1`` must have ``g``,
    and ``M1`` must be a reflection.
    """
    e_inf = _charpoly_error(mono.Minf, f)
    e_zero = _charpoly_error(np.linalg.inv(mono.M0), g)
    report = CrossValidation(
        f=f, g=g,
        charpoly_inf_error=e_inf,
        charpoly_zero_inv_error=e_zero,
        reflection_sigma2=mono.reflection_sigma2,
        loop_relation_residual=mono.loop_relation_residual,
        tol=tol,
        notes=list(notes),
        monodromy=mono,
    )
    if report.worst > tol:
        raise ValidationFailed(
            f"numeric monodromy disagrees with H(f, g): worst residual {report.worst:.3e} > {tol:.1e}",
            worst_residual=report.worst,
        )
    return report


def cross_validate(
    alpha: ParameterList | Sequence,
    beta: ParameterList | Sequence,
    tol: float = 1e-6,
    basepoint: complex = 0.5,
    **kwargs,
) -> CrossValidation:
    """Run the numeric path on rational parameters and compare with the exact ``f``, ``g``.

    Zero entries of ``beta`` are replaced by 1 (same ``g``), which keeps the
    local exponents at 0 in ``(-1, 0]``; the report records the shift.
    """
    alpha = alpha if isinstance(alpha, ParameterList) else ParameterList(alpha)
    beta = beta if isinstance(beta, ParameterList) else ParameterList(beta)
    f = poly_from_parameters(alpha)
    g = poly_from_parameters(beta)
    notes = []
    beta_num = [Fraction(1) if b == 0 else b for b in beta.angles]
    if list(beta_num) != list(beta.angles):
        notes.append("beta entries equal to 0 shifted to 1 (g unchanged)")
    mono = numeric_monodromy(list(alpha.angles), beta_num, basepoint=basepoint, tol=tol, check=False, **kwargs)
    return validate_against(mono, f, g, tol, notes)
