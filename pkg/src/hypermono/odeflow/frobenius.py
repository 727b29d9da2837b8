"""
Fundamental solutions ``Y = X(z) z^E`` of ``theta Y = A(z) Y`` at a regular
singular point, with shearing transformations to remove integer resonances.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

import numpy as np
import scipy.linalg as sla

from ..errors import IllConditioned, ResonanceReductionFailed
from .series import MatrixSeries, majorant_constant

__all__ = ["frobenius_solve", "matrix_power", "monodromy_of_series", "shear"]

RESONANCE_TOL = 1e-9


def matrix_power(T: np.ndarray, z: complex) -> np.ndarray:
    """``z^T = exp(Log(z) T)`` with the principal logarithm."""
    if z == 0:
        raise ValueError("z^T is undefined at z = 0")
    return sla.expm(np.log(complex(z)) * np.asarray(T, dtype=complex))


def _invariant_projector(A0: np.ndarray, select) -> tuple[np.ndarray, int]:
    """Projector onto the A0-invariant subspace of selected eigenvalues, along the complementary one."""
    n = A0.shape[0]
    T, Z, sdim = sla.schur(A0.astype(complex), output="complex", sort=select)
    if sdim in (0, n):
        return (np.eye(n, dtype=complex) if sdim == n else np.zeros((n, n), complex)), sdim
    T11, T12, T22 = T[:sdim, :sdim], T[:sdim, sdim:], T[sdim:, sdim:]
    # T11 Y - Y T22 = -T12 decouples the blocks
    Y = sla.solve_sylvester(T11, -T22, -T12)
    S = np.eye(n, dtype=complex)
    S[:sdim, sdim:] = Y
    Sinv = np.eye(n, dtype=complex)
    Sinv[:sdim, sdim:] = -Y
    D = np.zeros((n, n), complex)
    D[:sdim, :sdim] = np.eye(sdim)
    Q = Z @ S
    Qinv = Sinv @ Z.conj().T
    return Q @ D @ Qinv, sdim


def shear(A: np.ndarray, proj: np.ndarray) -> np.ndarray:
    """Coefficients of the sheared system for ``Y = (Pi_F + z Pi_E) W``.

    With ``Pi_E = proj`` and ``Pi_F = I - proj``, ``W`` solves ``theta W = B W``
    where ``B = S^-1 A S - Pi_E`` and ``S = Pi_F + z Pi_E``. One coefficient is
    consumed, so ``len(B) == len(A) - 1``.
    """
    n = A.shape[1]
    PE = proj
    PF = np.eye(n) - proj
    K = A.shape[0]
    B = np.zeros((K - 1, n, n), dtype=complex)
    for k in range(K - 1):
        B[k] = PF @ A[k] @ PF + PE @ A[k + 1] @ PF + PE @ A[k] @ PE
        if k >= 1:
            B[k] += PF @ A[k - 1] @ PE
    B[0] -= PE
    return B


def _as_complex_list(vals) -> list[complex]:
    return [complex(v) for v in vals]


def _resonant_target(eigs: Sequence, exact: bool, tol: float):
    """The eigenvalue to shift down by one, or None when resonance-free.

    Picks, among eigenvalues exceeding another by a positive integer, the one
    with the largest real part.
    """
    best = None
    for lam in eigs:
        for mu in eigs:
            d = lam - mu
            if exact:
                hit = d.denominator == 1 and d > 0 if isinstance(d, Fraction) else False
            else:
                r = round(d.real)
                hit = r >= 1 and abs(d - r) < tol
            if hit and (best is None or complex(lam).real > complex(best).real):
                best = lam
    return best


def _shear_budget(eigs: Sequence, exact: bool, tol: float) -> int:
    """Sum over integer-congruence classes of the largest integer gap."""
    classes: list[list] = []
    for lam in eigs:
        for cls in classes:
            d = lam - cls[0]
            if exact and isinstance(d, Fraction) and d.denominator == 1:
                cls.append(lam)
                break
            if not exact and abs(d - round(complex(d).real)) < tol:
                cls.append(lam)
                break
        else:
            classes.append([lam])
    total = 0
    for cls in classes:
        re = [complex(x).real for x in cls]
        total += int(round(max(re) - min(re)))
    return total


def frobenius_solve(
    A: np.ndarray,
    N: int,
    exponents: Sequence | None = None,
    resonance_tol: float = RESONANCE_TOL,
    radius: float = 1.0,
) -> MatrixSeries:
    """Fundamental matrix ``Y = X(z) z^E`` of ``theta Y = A(z) Y`` near 0.

    Parameters
    ----------
    A : array, shape (K, n, n)
        Taylor coefficients of ``A(z)`` at 0; ``K`` must exceed ``N`` plus the
        number of shears needed.
    N : int
        Truncation order of ``X``.
    exponents : sequence, optional
        Exact eigenvalues of ``A[0]`` (e.g. Fractions). When given, resonance is
        decided exactly; otherwise numerically with ``resonance_tol``.
    radius : float
        Known convergence radius of ``A(z)``, used for the majorant bound.

    Returns
    -------
    MatrixSeries
        ``coefficients`` are the ``X_k``, ``exponent_matrix`` is ``E``;
        ``meta["shears"]`` counts the shearing steps.
    """
    A = np.asarray(A, dtype=complex)
    n = A.shape[1]
    exact = exponents is not None and all(isinstance(e, (int, Fraction)) for e in exponents)
    eigs = [Fraction(e) for e in exponents] if exact else (
        _as_complex_list(exponents) if exponents is not None else _as_complex_list(np.linalg.eigvals(A[0]))
    )
    budget = _shear_budget(eigs, exact, resonance_tol)
    # accumulated transform S(z) = S0 + z S1 + z^2 S2 + ... applied on the left
    S = [np.eye(n, dtype=complex)]
    cur = A
    shears = 0
    while True:
        target = _resonant_target(eigs, exact, resonance_tol)
        if target is None:
            break
        if shears >= budget:
            raise ResonanceReductionFailed(
                f"shearing exceeded the a-priori bound of {budget} steps"
            )
        distinct = sorted({complex(e) for e in eigs}, key=lambda c: (c.real, c.imag))
        gaps = [abs(a - b) for i, a in enumerate(distinct) for b in distinct[i + 1 :]]
        radius_sel = 0.5 * min(gaps) if gaps else 0.5
        t = complex(target)
        proj, r = _invariant_projector(cur[0], lambda x, t=t, rs=radius_sel: abs(x - t) < rs)
        mult = sum(1 for e in eigs if e == target) if exact else sum(1 for e in eigs if abs(complex(e) - t) < radius_sel)
        if r != mult:
            raise ResonanceReductionFailed(
                f"eigenvalue {target}: invariant subspace has dimension {r}, expected {mult}"
            )
        if cur.shape[0] < 3:
            raise ResonanceReductionFailed("not enough Taylor coefficients to shear")
        cur = shear(cur, proj)
        # S <- S (Pi_F + z Pi_E)
        PF = np.eye(n) - proj
        newS = [np.zeros((n, n), complex) for _ in range(len(S) + 1)]
        for i, Si in enumerate(S):
            newS[i] += Si @ PF
            newS[i + 1] += Si @ proj
        S = newS
        eigs = [e - 1 if e == target or (not exact and abs(complex(e) - t) < radius_sel) else e for e in eigs]
        shears += 1
    if cur.shape[0] < N + 1:
        raise ValueError(f"need at least {N + 1} coefficients after {shears} shears, have {cur.shape[0]}")
    A0 = cur[0]
    num = np.array([complex(e) for e in eigs])
    X = np.zeros((N + 1, n, n), dtype=complex)
    X[0] = np.eye(n)
    for k in range(1, N + 1):
        gap = np.min(np.abs(k - (num[:, None] - num[None, :])))
        if gap < 1e-8:
            raise IllConditioned(f"k - ad(A0) is (nearly) singular at k = {k}")
        rhs = np.einsum("jab,jbc->ac", cur[k:0:-1], X[:k])
        # (k - ad A0) X = k X - A0 X + X A0
        X[k] = sla.solve_sylvester(k * np.eye(n) - A0, A0, rhs)
    # X_total(z) = S(z) X_W(z)
    total = np.zeros((N + 1, n, n), dtype=complex)
    for i, Si in enumerate(S):
        total[i:] += np.einsum("ab,kbc->kac", Si, X[: N + 1 - i])
    R = 0.9 * radius
    K = majorant_constant(cur[1 : N + 1], R) if N >= 1 else 1.0
    return MatrixSeries(
        center=0j,
        coefficients=total,
        radius_bound=radius,
        exponent_matrix=A0,
        majorant=(float(np.linalg.norm(X[0], 2)), K, R),
        meta={"shears": shears, "exponents": eigs},
    )


def monodromy_of_series(sol: MatrixSeries, basepoint: complex) -> np.ndarray:
    """Monodromy (right action) of ``Y(z) = X(z) z^E`` in the basis normalized to ``I`` at ``basepoint``.

    ``X`` is single-valued, so a loop turns ``Y`` into ``Y exp(2 pi i E)``; in the
    normalized basis this is conjugation by ``Y(basepoint)``.
    """
    C = sol.evaluate_full(basepoint)
    Mloc = sla.expm(2j * math.pi * sol.exponent_matrix)
    return C @ Mloc @ np.linalg.inv(C)
