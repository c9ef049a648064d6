"""Extremal function of the real sphere inside its complexification.

The complexified sphere is {z in C^n : sum z_i^2 = 1}; on it the extremal
plurisubharmonic function of the real sphere has the closed form

    V(z) = 1/2 log(|z|^2 + sqrt(|z|^4 - 1)),

zero exactly on the real points.  Its one-sided derivative in an imaginary
tangent direction equals the Euclidean length of the direction, which is why
the induced metric on the real sphere is the round one.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gamma, pi

import numpy as np

#: tolerance for membership in the complexified sphere
COMPLEX_SPHERE_TOL = 1e-8


@dataclass(frozen=True)
class ComplexSpherePoint:
    """Point z in C^n with sum z_i^2 = 1 (complex equation, not |z| = 1)."""

    z: tuple

    @staticmethod
    def of(z) -> "ComplexSpherePoint":
        zz = np.asarray(z, dtype=complex)
        _check_on_variety(zz)
        return ComplexSpherePoint(tuple(complex(v) for v in zz))

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.z, dtype=complex)


def _check_on_variety(z: np.ndarray, tol: float = COMPLEX_SPHERE_TOL):
    s = complex(np.sum(z * z))
    if abs(s - 1.0) > tol:
        raise ValueError(f"point must satisfy sum z_i^2 = 1 within {tol}, got {s}")


def extremal_eval(z) -> float:
    """V(z) = 1/2 log(|z|^2 + sqrt(|z|^4 - 1)) on the complexified sphere.

    On the variety |z|^2 >= |sum z_i^2| = 1, so the radicand is nonnegative
    up to rounding; it is clamped at zero so real points evaluate to 0.
    """
    if isinstance(z, ComplexSpherePoint):
        z = z.array
    else:
        z = np.asarray(z, dtype=complex)
        _check_on_variety(z)
    r2 = float(np.sum(np.abs(z) ** 2))
    rad = max(r2 * r2 - 1.0, 0.0)
    return 0.5 * float(np.log(r2 + np.sqrt(rad)))


def hyperbolic_curve_point(t: float, n: int = 3) -> np.ndarray:
    """(cosh t, i sinh t, 0, ...) in C^n; V equals t along this curve."""
    z = np.zeros(n, dtype=complex)
    z[0] = np.cosh(t)
    z[1] = 1j * np.sinh(t)
    return z


def imaginary_arc(x, v, t: float) -> np.ndarray:
    """Arc on the complexified sphere through x with initial velocity i v.

    For a real unit vector x and a real tangent v (v . x = 0):
        z(t) = sqrt(1 + |v|^2 log^2(1+t)) x + i log(1+t) v
    stays on the variety for all t >= 0.
    """
    x = np.asarray(x, dtype=float)
    v = np.asarray(v, dtype=float)
    L = np.log1p(t)
    return np.sqrt(1.0 + float(np.dot(v, v)) * L * L) * x + 1j * L * v


def tangent_derivative(x, v, base_step: float = 1e-2, levels: int = 6) -> float:
    """One-sided derivative of V along the imaginary direction i v at a real
    sphere point x, by Richardson extrapolation of V(z(t))/t as t -> 0+.

    Must equal |v| (and does, to well below 1e-6).
    """
    x = np.asarray(x, dtype=float)
    v = np.asarray(v, dtype=float)
    if abs(np.linalg.norm(x) - 1.0) > 1e-10:
        raise ValueError("base point must be a real unit vector")
    if abs(float(np.dot(x, v))) > 1e-10 * max(1.0, float(np.linalg.norm(v))):
        raise ValueError("direction must be tangent to the sphere at x")
    if not np.any(v):
        return 0.0
    # Neville table on the one-sided quotients; the quotient is analytic in t
    steps = base_step * 0.5 ** np.arange(levels)
    table = [extremal_eval(imaginary_arc(x, v, t)) / t for t in steps]
    for k in range(1, levels):
        fac = 2.0 ** k
        table = [(fac * table[i + 1] - table[i]) / (fac - 1.0) for i in range(len(table) - 1)]
    return float(table[0])


def equilibrium_constant(n: int) -> float:
    """Density Gamma(n/2) / (2 pi^{n/2}) of the sphere equilibrium measure.

    Constant over S^{n-1}; multiplied by the surface area it gives total
    mass 1.
    """
    if n < 2:
        raise ValueError("requires n >= 2")
    return gamma(n / 2.0) / (2.0 * pi ** (n / 2.0))


def surface_area(n: int) -> float:
    """Surface measure 2 pi^{n/2} / Gamma(n/2) of the unit sphere S^{n-1}."""
    if n < 2:
        raise ValueError("requires n >= 2")
    return 2.0 * pi ** (n / 2.0) / gamma(n / 2.0)
