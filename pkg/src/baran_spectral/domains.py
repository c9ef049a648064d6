"""Domains carrying a pluripotential equilibrium measure: ball, simplex, sphere.

A domain is identified by its kind and the ambient dimension ``n``.  Ball and
simplex points live in an ``n``-dimensional chart; sphere points are ambient
unit vectors of length ``n`` (the sphere itself has dimension ``n - 1``),
which avoids the coordinate singularities of angle charts.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

BALL = "ball"
SIMPLEX = "simplex"
SPHERE = "sphere"

_KINDS = (BALL, SIMPLEX, SPHERE)

#: unit-vector tolerance for sphere points
SPHERE_TOL = 1e-12


class DomainError(ValueError):
    """A point violates the interior/on-surface constraint of its domain."""


@dataclass(frozen=True)
class DomainSpec:
    """One of the three supported bodies.

    kind : "ball", "simplex" or "sphere"
    n    : ambient dimension; the sphere S^{n-1} sits in R^n (n >= 2),
           ball and simplex are n-dimensional (n >= 1).
    """

    kind: str
    n: int

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown domain kind {self.kind!r}")
        if self.n < 1:
            raise ValueError("dimension must be >= 1")
        if self.kind == SPHERE and self.n < 2:
            raise ValueError("sphere requires n >= 2")

    @property
    def chart_dim(self) -> int:
        """Number of coordinates of a stored point."""
        return self.n


def ball(n: int) -> DomainSpec:
    return DomainSpec(BALL, n)


def simplex(n: int) -> DomainSpec:
    return DomainSpec(SIMPLEX, n)


def sphere(n: int) -> DomainSpec:
    return DomainSpec(SPHERE, n)


@dataclass(frozen=True)
class ChartPoint:
    """A validated point of a domain."""

    domain: DomainSpec
    coords: tuple

    @staticmethod
    def of(domain: DomainSpec, coords) -> "ChartPoint":
        x = as_point(domain, coords)
        return ChartPoint(domain, tuple(float(c) for c in x))

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.coords, dtype=float)


def as_point(domain: DomainSpec, x) -> np.ndarray:
    """Coerce ``x`` (array-like or ChartPoint) to a validated coordinate vector."""
    if isinstance(x, ChartPoint):
        if x.domain != domain:
            raise DomainError(f"point belongs to {x.domain}, expected {domain}")
        return x.array
    x = np.asarray(x, dtype=float)
    if x.shape != (domain.chart_dim,):
        raise DomainError(
            f"expected {domain.chart_dim} coordinates for {domain.kind}, got shape {x.shape}"
        )
    validate_point(domain, x)
    return x


def validate_point(domain: DomainSpec, x: np.ndarray) -> None:
    """Raise DomainError naming the violated constraint, if any."""
    if domain.kind == BALL:
        r2 = float(np.dot(x, x))
        if not r2 < 1.0:
            raise DomainError(f"ball point must satisfy |x| < 1 strictly, got |x|^2 = {r2}")
    elif domain.kind == SIMPLEX:
        if not np.all(x > 0.0):
            raise DomainError(f"simplex point must satisfy x_i > 0 strictly, got {x}")
        s = float(np.sum(x))
        if not s < 1.0:
            raise DomainError(f"simplex point must satisfy sum(x) < 1 strictly, got sum = {s}")
    else:
        r = float(np.linalg.norm(x))
        if abs(r - 1.0) > SPHERE_TOL:
            raise DomainError(f"sphere point must satisfy |x| = 1 within {SPHERE_TOL}, got |x| = {r}")


def boundary_distance(domain: DomainSpec, x) -> float:
    """Euclidean distance from an interior point to the domain boundary.

    Used for finite-difference stencil clearance checks.  The sphere has no
    boundary; it reports the distance to the angle-chart poles instead (the
    clearance that matters for chart-based stencils on S^2).
    """
    x = as_point(domain, x)
    if domain.kind == BALL:
        return 1.0 - float(np.linalg.norm(x))
    if domain.kind == SIMPLEX:
        # distance to the face sum(x) = 1 is (1 - sum) / sqrt(n)
        return float(min(np.min(x), (1.0 - np.sum(x)) / np.sqrt(domain.n)))
    return 1.0 - abs(float(x[-1]))


def random_interior_point(domain: DomainSpec, rng: np.random.Generator, margin: float = 0.05) -> np.ndarray:
    """Draw a point of the domain keeping ``margin`` clearance from the boundary."""
    n = domain.n
    if domain.kind == BALL:
        while True:
            x = rng.uniform(-1.0, 1.0, size=n) * (1.0 - margin)
            if np.linalg.norm(x) <= 1.0 - margin:
                return x
    if domain.kind == SIMPLEX:
        while True:
            x = rng.uniform(margin, 1.0, size=n)
            if np.sum(x) <= 1.0 - margin and np.all(x >= margin):
                return x
    v = rng.normal(size=n)
    return v / np.linalg.norm(v)


def random_tangent(domain: DomainSpec, x, rng: np.random.Generator, unit: bool = True) -> np.ndarray:
    """Random tangent vector at ``x`` (projected to the tangent plane for the sphere)."""
    x = as_point(domain, x)
    v = rng.normal(size=domain.n)
    if domain.kind == SPHERE:
        v = v - np.dot(v, x) * x
    if unit:
        v = v / np.linalg.norm(v)
    return v


def interior_grid(domain: DomainSpec, per_axis: int, margin: float = 1e-3) -> np.ndarray:
    """Tensor grid clipped to the domain interior with the given margin.

    Returns an array of shape (N, chart_dim).  For the sphere (n = 3 only)
    the grid is built in latitude/longitude and mapped to ambient unit
    vectors, keeping ``margin`` clearance from the poles.
    """
    n = domain.n
    if domain.kind == BALL:
        axes = [np.linspace(-1.0 + margin, 1.0 - margin, per_axis)] * n
        pts = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, n)
        keep = np.einsum("ij,ij->i", pts, pts) <= (1.0 - margin) ** 2
        return pts[keep]
    if domain.kind == SIMPLEX:
        axes = [np.linspace(margin, 1.0 - margin, per_axis)] * n
        pts = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, n)
        keep = pts.sum(axis=1) <= 1.0 - margin
        return pts[keep]
    if n != 3:
        raise DomainError("grids on the sphere are only supported for n = 3")
    theta = np.linspace(-np.pi / 2 + margin, np.pi / 2 - margin, per_axis)
    phi = np.linspace(0.0, 2 * np.pi, per_axis, endpoint=False)
    tt, pp = np.meshgrid(theta, phi, indexing="ij")
    return np.stack(
        [np.cos(tt) * np.cos(pp), np.cos(tt) * np.sin(pp), np.sin(tt)], axis=-1
    ).reshape(-1, 3)
