"""
Linear systems with simple poles, and the hypergeometric operator in theta form.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Mapping, Sequence

import numpy as np

__all__ = ["FuchsianSystem", "ThetaFormEquation", "hypergeometric_system", "scalar_to_system"]


@dataclass(frozen=True)
class FuchsianSystem:
    """``Y' = (sum_s R_s / (z - s) + P(z)) Y`` with polynomial part ``P``.

    ``residues`` maps each pole ``s`` to its residue matrix; ``polynomial[j]``
    is the coefficient of ``z^j`` in ``P``.
    """

    residues: Mapping[complex, np.ndarray]
    polynomial: Sequence[np.ndarray] = field(default_factory=tuple)

    @property
    def n(self) -> int:
        for R in self.residues.values():
            return R.shape[0]
        return self.polynomial[0].shape[0]

    @property
    def singularities(self) -> list[complex]:
        return [complex(s) for s in self.residues]

    def distance_to_singularity(self, z: complex) -> float:
        if not self.residues:
            return np.inf
        return min(abs(z - s) for s in self.singularities)

    def matrix(self, z: complex) -> np.ndarray:
        out = np.zeros((self.n, self.n), dtype=complex)
        for s, R in self.residues.items():
            out += R / (z - s)
        for j, P in enumerate(self.polynomial):
            out += P * z**j
        return out

    def taylor(self, center: complex, order: int) -> np.ndarray:
        """Taylor coefficients of the coefficient matrix at ``center``, shape ``(order+1, n, n)``."""
        n = self.n
        k = np.arange(order + 1)
        out = np.zeros((order + 1, n, n), dtype=complex)
        for s, R in self.residues.items():
            d = center - s
            # R / (z - s) = sum_k R (-1)^k (z - c)^k / d^(k+1)
            scal = (-1.0) ** k / d ** (k + 1)
            out += scal[:, None, None] * R[None]
        for j, P in enumerate(self.polynomial):
            for i in range(min(j, order) + 1):
                out[i] += comb(j, i) * center ** (j - i) * P
        return out

    def theta_series(self, order: int) -> np.ndarray:
        """Coefficients of ``z M(z)`` at 0, the matrix in ``theta Y = z M(z) Y``."""
        n = self.n
        out = np.zeros((order + 1, n, n), dtype=complex)
        for s, R in self.residues.items():
            if s == 0:
                out[0] += R
            else:
                # z R / (z - s) = -R sum_{k>=1} z^k / s^k
                k = np.arange(1, order + 1)
                out[1:] += (-(1.0 / s) ** k)[:, None, None] * R[None]
        for j, P in enumerate(self.polynomial):
            if j + 1 <= order:
                out[j + 1] += P
        return out


def scalar_to_system(coeffs_residue: Sequence[Mapping[complex, complex]], polynomial_coeffs: Sequence[Sequence[complex]]) -> FuchsianSystem:
    """Companion system for ``y^(n) + sum_i f_i y^(i) = 0`` where each ``f_i`` has simple poles.

    ``coeffs_residue[i]`` maps pole -> residue of ``f_i``; ``polynomial_coeffs[i]``
    lists the Taylor coefficients at 0 of the polynomial part of ``f_i``.
    Unknown vector ``(y, y', ..., y^(n-1))``.
    """
    n = len(coeffs_residue)
    poles = sorted({complex(s) for d in coeffs_residue for s in d}, key=lambda c: (c.real, c.imag))
    residues = {}
    for s in poles:
        R = np.zeros((n, n), dtype=complex)
        for i in range(n):
            R[n - 1, i] = -coeffs_residue[i].get(s, 0)
        residues[s] = R
    deg = max((len(p) for p in polynomial_coeffs), default=0)
    poly = []
    for j in range(max(deg, 1)):
        P = np.zeros((n, n), dtype=complex)
        if j == 0:
            for i in range(n - 1):
                P[i, i + 1] = 1.0
        for i in range(n):
            if j < len(polynomial_coeffs[i]):
                P[n - 1, i] -= polynomial_coeffs[i][j]
        poly.append(P)
    return FuchsianSystem(residues=residues, polynomial=tuple(poly))


def _expand(roots: Sequence[complex]) -> np.ndarray:
    """Ascending coefficients of ``prod (t + r)``."""
    c = np.array([1.0 + 0j])
    for r in roots:
        c = np.convolve(c, np.array([r, 1.0]))
    return c


@dataclass(frozen=True)
class ThetaFormEquation:
    """``sum_i (p_i - z q_i) theta^i y = 0`` with ``sum p_i t^i = prod (t + beta_j - 1)``
    and ``sum q_i t^i = prod (t + alpha_j)``.

    ``theta_coeffs[i]`` is the pair ``(p_i, -q_i)``: the coefficient of
    ``theta^i`` as the linear polynomial ``p_i + (-q_i) z``.
    """

    alpha: np.ndarray
    beta: np.ndarray
    p: np.ndarray
    q: np.ndarray
    exact_alpha: tuple[Fraction, ...] | None = None
    exact_beta: tuple[Fraction, ...] | None = None

    @property
    def n(self) -> int:
        return len(self.alpha)

    @property
    def theta_coeffs(self) -> list[tuple[complex, complex]]:
        return [(complex(self.p[i]), complex(-self.q[i])) for i in range(self.n + 1)]

    def residue_at_zero(self) -> np.ndarray:
        n = self.n
        R = np.zeros((n, n), dtype=complex)
        for i in range(n - 1):
            R[i, i + 1] = 1.0
        R[n - 1, :] = -self.p[:n]
        return R

    def residue_at_one(self) -> np.ndarray:
        n = self.n
        R = np.zeros((n, n), dtype=complex)
        R[n - 1, :] = self.p[:n] - self.q[:n]
        return R

    def system(self) -> FuchsianSystem:
        """First-order system for ``Y = (y, theta y, ..., theta^(n-1) y)`` in ``d/dz`` form."""
        return FuchsianSystem(residues={0j: self.residue_at_zero(), 1 + 0j: self.residue_at_one()})

    def theta_series(self, order: int) -> np.ndarray:
        return self.system().theta_series(order)

    def indicial_roots(self) -> np.ndarray:
        """Roots of ``sum p_i t^i``, the local exponents at 0."""
        return np.linalg.eigvals(self.residue_at_zero())

    def exponents_at_zero(self) -> list[complex] | list[Fraction]:
        """``1 - beta_j``, exactly when the parameters were rational."""
        if self.exact_beta is not None:
            return [1 - b for b in self.exact_beta]
        return [1 - b for b in self.beta]

    def apply(self, y_taylor: np.ndarray) -> np.ndarray:
        """Apply the operator to a power series at 0 (coefficients ascending)."""
        N = len(y_taylor)
        k = np.arange(N)
        out = np.zeros(N, dtype=complex)
        for i in range(self.n + 1):
            th = (k.astype(complex) ** i) * y_taylor
            out += self.p[i] * th
            out[1:] -= self.q[i] * th[:-1]
        return out


def hypergeometric_system(alpha: Sequence, beta: Sequence) -> ThetaFormEquation:
    """Expand ``(theta + b_1 - 1)...(theta + b_n - 1) - z (theta + a_1)...(theta + a_n)``."""
    if len(alpha) != len(beta) or not len(alpha):
        raise ValueError("alpha and beta must be nonempty and of equal length")
    exact = all(isinstance(x, (int, Fraction)) for x in list(alpha) + list(beta))
    a = np.array([complex(x) for x in alpha])
    b = np.array([complex(x) for x in beta])
    p = _expand(b - 1)
    q = _expand(a)
    return ThetaFormEquation(
        alpha=a,
        beta=b,
        p=p,
        q=q,
        exact_alpha=tuple(Fraction(x) for x in alpha) if exact else None,
        exact_beta=tuple(Fraction(x) for x in beta) if exact else None,
    )
