"""
Analytic continuation of fundamental matrices along polygonal paths.
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from ..errors import ClearanceViolated, ToleranceUnreachable
from .series import system_series
from .systems import FuchsianSystem

__all__ = [
    "DEFAULT_MAX_ORDER",
    "PathSpec",
    "TransportResult",
    "big_loop",
    "continue_along",
    "default_max_order",
    "loop_around",
]

DEFAULT_MAX_ORDER = 256


def default_max_order() -> int:
    env = os.environ.get("HYPERMONO_MAX_ORDER")
    return int(env) if env else DEFAULT_MAX_ORDER


@dataclass(frozen=True)
class PathSpec:
    """Polygonal path starting at ``basepoint`` through ``waypoints``.

    A closed path returns to the basepoint after the last waypoint.
    """

    basepoint: complex
    waypoints: tuple[complex, ...] = ()
    closed: bool = False

    def vertices(self) -> list[complex]:
        pts = [complex(self.basepoint)] + [complex(w) for w in self.waypoints]
        if self.closed:
            pts.append(complex(self.basepoint))
        return pts

    def reversed(self) -> PathSpec:
        pts = self.vertices()[::-1]
        if self.closed:
            return PathSpec(pts[0], tuple(pts[1:-1]), closed=True)
        return PathSpec(pts[0], tuple(pts[1:]), closed=False)

    def then(self, other: PathSpec) -> PathSpec:
        """Concatenation: this path followed by ``other`` (which must start where this ends)."""
        a, b = self.vertices(), other.vertices()
        if abs(a[-1] - b[0]) > 1e-14:
            raise ValueError("paths do not connect")
        pts = a + b[1:]
        return PathSpec(pts[0], tuple(pts[1:]), closed=False)


@dataclass(frozen=True)
class TransportResult:
    """``matrix`` maps the value of a solution at the start to its value at the end.

    For a closed loop, a fundamental matrix equal to ``I`` at the basepoint
    continues to ``matrix``, i.e. the right monodromy action.
    """

    matrix: np.ndarray
    steps: int
    max_order_used: int
    tail_estimate: float
    points: list[complex] = field(repr=False, default_factory=list)


def loop_around(point: complex, basepoint: complex, vertices: int = 32) -> PathSpec:
    """Counterclockwise circle about ``point`` through ``basepoint``."""
    r = basepoint - point
    rot = np.exp(2j * np.pi * np.arange(1, vertices) / vertices)
    return PathSpec(basepoint, tuple(point + r * rot), closed=True)


def big_loop(basepoint: complex, center: complex = 0.5, radius: float = 1.0, vertices: int = 48) -> PathSpec:
    """Counterclockwise loop around both 0 and 1, leaving the basepoint upward.

    Homotopic to the loop around 0 followed by the loop around 1.
    """
    b = complex(basepoint)
    dx = b.real - center.real if isinstance(center, complex) else b.real - center
    top = complex(b.real, math.sqrt(radius**2 - dx**2))
    start = np.angle(top - center)
    angles = start + 2 * np.pi * np.arange(0, vertices + 1) / vertices
    circle = [center + radius * np.exp(1j * t) for t in angles]
    circle[0] = circle[-1] = top
    return PathSpec(b, tuple(circle), closed=True)


def _segment_distance(a: complex, b: complex, s: complex) -> float:
    d = b - a
    if d == 0:
        return abs(s - a)
    t = ((s - a) * d.conjugate()).real / abs(d) ** 2
    t = min(1.0, max(0.0, t))
    return abs(a + t * d - s)


def _subdivide(system: FuchsianSystem, vertices: list[complex], clearance: float, max_step: float) -> list[complex]:
    pts = [vertices[0]]
    for a, b in zip(vertices, vertices[1:]):
        for s in system.singularities:
            if _segment_distance(a, b, s) < clearance:
                raise ClearanceViolated(
                    f"segment {a:.4g} -> {b:.4g} passes within {clearance} of singularity {s:.4g}"
                )
        z = a
        while abs(b - z) > 1e-15:
            rho = system.distance_to_singularity(z)
            h = min(0.5 * rho, max_step)
            if abs(b - z) <= h:
                z = b
            else:
                z = z + h * (b - z) / abs(b - z)
            pts.append(z)
    return pts


def continue_along(
    system: FuchsianSystem,
    path: PathSpec,
    tol: float = 1e-12,
    max_order: int | None = None,
    clearance: float = 0.05,
    max_step: float = 0.25,
) -> TransportResult:
    """Transport matrix of ``Y' = M(z) Y`` along ``path``.

    Each step expands the solution at the current point and evaluates it at
    the next, at most half the distance to the nearest singularity away. The
    order of each local series is raised until its estimated tail falls
    below ``tol / steps``.
    """
    if max_order is None:
        max_order = default_max_order()
    verts = path.vertices()
    for v in verts:
        if system.distance_to_singularity(v) < clearance:
            raise ClearanceViolated(f"path vertex {v:.4g} lies within {clearance} of a singularity")
    pts = _subdivide(system, verts, clearance, max_step)
    steps = max(len(pts) - 1, 1)
    step_tol = tol / steps
    n = system.n
    T = np.eye(n, dtype=complex)
    used, worst = 0, 0.0
    for z0, z1 in zip(pts, pts[1:]):
        rho = system.distance_to_singularity(z0)
        h = abs(z1 - z0)
        taylor = system.taylor(z0, max_order)
        sol = system_series(taylor, np.eye(n, dtype=complex), z0, rho, step=h, tol=step_tol)
        if not sol.meta["converged"]:
            raise ToleranceUnreachable(
                f"order {max_order} is not enough for tolerance {step_tol:.2e} at z = {z0:.4g}"
            )
        T = sol.evaluate(z1) @ T
        used = max(used, sol.order)
        worst = max(worst, sol.meta["tail_estimate"])
    return TransportResult(matrix=T, steps=steps, max_order_used=used, tail_estimate=worst, points=pts)
