"""
Truncated power-series solutions at ordinary points.

Two entry points: :func:`series_solve` for a scalar equation
``y^(n) + f_{n-1} y^(n-1) + ... + f_0 y = 0`` and :func:`system_series` for a
matrix system ``Y' = M(z) Y``. Both produce coefficients by the recursion
obtained from comparing coefficients of ``(z - c)^k``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

__all__ = ["MatrixSeries", "majorant_constant", "series_solve", "system_series"]


@dataclass(frozen=True)
class MatrixSeries:
    """Coefficients ``X_k`` of ``sum X_k (z - center)^k``, optionally times ``(z - center)^E``.

    ``coefficients`` has shape ``(N + 1, ...)``; scalar series use shape ``(N + 1,)``.
    The majorant triple ``(C, K, R)`` bounds ``|X_k| <= C (K / R)^k``.
    """

    center: complex
    coefficients: np.ndarray
    radius_bound: float
    exponent_matrix: np.ndarray | None = None
    majorant: tuple[float, float, float] | None = None
    meta: dict = field(default_factory=dict)

    @property
    def order(self) -> int:
        return self.coefficients.shape[0] - 1

    def evaluate(self, z: complex) -> np.ndarray:
        """Holomorphic part ``X(z)`` by Horner's rule."""
        t = z - self.center
        acc = np.zeros_like(self.coefficients[0], dtype=complex)
        for c in self.coefficients[::-1]:
            acc = acc * t + c
        return acc

    def evaluate_full(self, z: complex) -> np.ndarray:
        """``X(z) (z - center)^E`` with the principal branch of the logarithm."""
        from .frobenius import matrix_power

        X = self.evaluate(z)
        if self.exponent_matrix is None:
            return X
        return X @ matrix_power(self.exponent_matrix, z - self.center)

    def derivative(self) -> MatrixSeries:
        k = np.arange(1, self.order + 1).reshape((-1,) + (1,) * (self.coefficients.ndim - 1))
        return MatrixSeries(
            center=self.center,
            coefficients=self.coefficients[1:] * k,
            radius_bound=self.radius_bound,
        )

    def tail_bound(self, r: float) -> float:
        """Majorant bound on ``sum_{k > N} |X_k| r^k``; ``inf`` outside its disc."""
        if self.majorant is None:
            return math.inf
        C, K, R = self.majorant
        q = K * r / R
        if q >= 1:
            return math.inf
        return C * q ** (self.order + 1) / (1 - q)


def majorant_constant(matrix_coeffs: np.ndarray, R: float) -> float:
    """``K = max(1, sup_i |M_i| R^(i+1))`` over the supplied coefficients.

    With this ``K``, the recursion ``(k+1) X_{k+1} = sum M_{k-j} X_j`` gives
    ``|X_k| R^k <= K^k |X_0|``, i.e. convergence at least on ``|z| < R / K``.
    """
    norms = np.array([np.linalg.norm(np.atleast_2d(M), 2) for M in matrix_coeffs])
    powers = R ** np.arange(1, len(norms) + 1)
    return float(max(1.0, np.max(norms * powers)))


def series_solve(
    coeff_series: Sequence[Sequence[complex]],
    initial: Sequence[complex],
    N: int,
    center: complex = 0.0,
    radius: float = math.inf,
) -> MatrixSeries:
    """Power-series solution of ``y^(n) + sum_i f_i(z) y^(i) = 0``.

    ``coeff_series[i]`` holds the Taylor coefficients of ``f_i`` at ``center``
    (missing terms are zero); ``initial[j]`` is ``y^(j)(center)``. For ``n = 1``
    the recursion reads ``-k x_k = x_{k-1} a_0 + ... + x_0 a_{k-1}``.
    """
    n = len(coeff_series)
    if len(initial) != n:
        raise ValueError("need one initial value per derivative order")
    if N < n:
        raise ValueError("truncation order must be at least the equation order")
    f = np.zeros((n, N + 1), dtype=complex)
    for i, cs in enumerate(coeff_series):
        cs = np.asarray(cs, dtype=complex)[: N + 1]
        f[i, : len(cs)] = cs
    x = np.zeros(N + 1, dtype=complex)
    for j in range(n):
        x[j] = initial[j] / math.factorial(j)
    for k in range(0, N + 1 - n):
        # coefficient of (z-c)^k in f_i y^(i): sum_j f_{i,k-j} (j+i)!/j! x_{j+i}
        s = 0j
        for i in range(n):
            j = np.arange(k + 1)
            ff = _falling(j + i, i)
            s += np.dot(f[i, k - j], ff * x[j + i])
        x[k + n] = -s / _falling(np.array([k + n]), n)[0]
    # majorant via the first-order companion system Y' = M Y with
    # M = [[0, 1, ...], ..., [-f_0, ..., -f_{n-1}]]
    R = radius * 0.9 if math.isfinite(radius) else 1.0
    mats = np.zeros((N + 1, n, n), dtype=complex)
    for i in range(n - 1):
        mats[0, i, i + 1] = 1.0
    mats[:, n - 1, :] = -f.T
    K = majorant_constant(mats, R)
    C = float(np.linalg.norm(np.asarray(initial, dtype=complex)))
    return MatrixSeries(
        center=center,
        coefficients=x,
        radius_bound=radius,
        majorant=(C, K, R),
        meta={"equation_order": n},
    )


def _falling(m: np.ndarray, i: int) -> np.ndarray:
    """``m (m-1) ... (m-i+1)`` elementwise."""
    out = np.ones_like(m, dtype=float)
    for t in range(i):
        out = out * (m - t)
    return out


def system_series(
    taylor: np.ndarray,
    Y0: np.ndarray,
    center: complex,
    radius: float,
    step: float | None = None,
    tol: float | None = None,
    N: int | None = None,
    min_order: int = 8,
) -> MatrixSeries:
    """Series solution of ``Y' = M(z) Y``, ``Y(center) = Y0``.

    ``taylor[k]`` is the k-th Taylor coefficient of ``M`` at ``center``. With
    ``N`` given the series is computed to that order. Otherwise ``step`` and
    ``tol`` select the order adaptively: terms are added until the geometric
    tail estimate at distance ``step`` drops below ``tol`` (or the supplied
    coefficients run out, reported through ``meta["converged"]``).
    """
    max_order = taylor.shape[0] - 1 if N is None else N
    if taylor.shape[0] < max_order + 1:
        raise ValueError("not enough Taylor coefficients for the requested order")
    n = Y0.shape[0]
    X = np.zeros((max_order + 2, n, n), dtype=complex)
    X[0] = Y0
    converged = N is not None
    estimate = math.nan
    q = (step / radius) if (step is not None and math.isfinite(radius)) else 0.5
    last = max_order
    for k in range(max_order):
        # (k+1) X_{k+1} = sum_{j<=k} M_{k-j} X_j
        X[k + 1] = np.einsum("jab,jbc->ac", taylor[k::-1], X[: k + 1]) / (k + 1)
        if N is None and k + 1 >= min_order:
            h = step
            t1 = np.abs(X[k + 1]).max() * h ** (k + 1)
            t0 = np.abs(X[k]).max() * h**k
            estimate = max(t0, t1) * (k + 2) / (1 - q)
            if estimate < tol:
                converged = True
                last = k + 1
                break
    coeffs = X[: last + 1]
    R = 0.9 * radius if math.isfinite(radius) else 1.0
    K = majorant_constant(taylor[: last + 1], R)
    return MatrixSeries(
        center=center,
        coefficients=coeffs,
        radius_bound=radius,
        majorant=(float(np.linalg.norm(Y0, 2)), K, R),
        meta={"converged": converged, "tail_estimate": estimate},
    )
