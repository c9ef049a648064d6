"""Riemannian geometry of the equilibrium-measure metrics on ball, simplex, sphere.

Closed forms implemented here:

* ball:    g_ij = delta_ij + x_i x_j / (1 - |x|^2),  g^-1 = I - x x^T,
           sqrt(det g) = (1 - |x|^2)^(-1/2)
* simplex: g = diag(1/x_i) + ones/(1 - sum x),  g^-1 = diag(x) - x x^T,
           sqrt(det g) = ((1 - sum x) * prod x_i)^(-1/2)
* sphere:  points are ambient unit vectors; the metric is the restriction of
           the Euclidean one (the round metric), reported as the identity.

The ball is isometric to the open upper unit hemisphere via the graph lift
x -> (x, sqrt(1 - |x|^2)); the componentwise square-root map sends the
simplex onto the positive-orthant part of the ball and scales this geometry
by a factor 2 in lengths (it is a homothety, g_simplex = 4 * pullback of
g_ball).  Geodesic distances, Einstein constants and spectra below all
follow from these two facts.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad, solve_ivp
from scipy.optimize import least_squares

from .domains import (
    BALL,
    SIMPLEX,
    SPHERE,
    DomainError,
    DomainSpec,
    as_point,
    boundary_distance,
)

#: central finite-difference step for metric derivatives
FD_STEP = 1e-5
#: required clearance from the boundary for difference stencils
FD_CLEARANCE = 1e-3
#: outer step for differentiating Christoffel symbols (Richardson base step)
RICCI_STEP = 1e-3


@dataclass(frozen=True)
class MetricEval:
    """Metric matrix, its inverse and the volume-form density at one point."""

    g: np.ndarray
    g_inv: np.ndarray
    sqrt_det: float


def metric_eval(domain: DomainSpec, x) -> MetricEval:
    """Evaluate the metric tensor at an interior (or on-sphere) point."""
    x = as_point(domain, x)
    n = domain.n
    if domain.kind == BALL:
        r2 = float(np.dot(x, x))
        g = np.eye(n) + np.outer(x, x) / (1.0 - r2)
        g_inv = np.eye(n) - np.outer(x, x)
        sqrt_det = (1.0 - r2) ** -0.5
    elif domain.kind == SIMPLEX:
        s = float(np.sum(x))
        g = np.diag(1.0 / x) + np.ones((n, n)) / (1.0 - s)
        g_inv = np.diag(x) - np.outer(x, x)
        sqrt_det = ((1.0 - s) * float(np.prod(x))) ** -0.5
    else:
        g = np.eye(n)
        g_inv = np.eye(n)
        sqrt_det = 1.0
    return MetricEval(g=g, g_inv=g_inv, sqrt_det=sqrt_det)


def equilibrium_density(domain: DomainSpec, x) -> float:
    """Density of the equilibrium measure with respect to Lebesgue/surface measure.

    Coincides with sqrt(det g) for ball and simplex (the Riemannian volume
    form is the equilibrium measure); on the sphere it is the constant
    Gamma(n/2) / (2 pi^{n/2}) normalising the surface area to total mass 1.
    """
    x = as_point(domain, x)
    if domain.kind == BALL:
        return (1.0 - float(np.dot(x, x))) ** -0.5
    if domain.kind == SIMPLEX:
        return ((1.0 - float(np.sum(x))) * float(np.prod(x))) ** -0.5
    from math import gamma, pi

    n = domain.n
    return gamma(n / 2.0) / (2.0 * pi ** (n / 2.0))


def baran_length(domain: DomainSpec, x, v) -> float:
    """Length sqrt(v^T g(x) v) of a tangent vector.

    For the sphere, v must be tangent (orthogonal to x within 1e-10); the
    length is then the Euclidean one.
    """
    x = as_point(domain, x)
    v = np.asarray(v, dtype=float)
    if v.shape != x.shape:
        raise ValueError("tangent vector and point dimension mismatch")
    if domain.kind == SPHERE:
        if abs(float(np.dot(x, v))) > 1e-10 * max(1.0, float(np.linalg.norm(v))):
            raise DomainError("sphere tangent vector must be orthogonal to the base point")
        return float(np.linalg.norm(v))
    g = metric_eval(domain, x).g
    return float(np.sqrt(v @ g @ v))


# ---------------------------------------------------------------------------
# curvature
# ---------------------------------------------------------------------------


def _require_chart(domain: DomainSpec, what: str):
    if domain.kind == SPHERE:
        raise DomainError(f"{what} needs a coordinate chart; ambient sphere points have none "
                          "(the sphere is handled through the ball isometry)")


def _metric_derivatives(domain: DomainSpec, x: np.ndarray, h: float) -> np.ndarray:
    """dg[l, j, k] = d g_jk / d x_l by central differences of the closed form."""
    n = domain.n
    dg = np.empty((n, n, n))
    for l in range(n):
        e = np.zeros(n)
        e[l] = h
        gp = metric_eval(domain, x + e).g
        gm = metric_eval(domain, x - e).g
        dg[l] = (gp - gm) / (2.0 * h)
    return dg


def christoffel(domain: DomainSpec, x, h: float = FD_STEP) -> np.ndarray:
    """Christoffel symbols Gamma[i, j, k] = Gamma^i_{jk}, symmetric in (j, k).

    Computed from central finite differences of the closed-form metric; the
    point must keep FD_CLEARANCE distance from the boundary so the stencil
    stays interior.
    """
    x = as_point(domain, x)
    _require_chart(domain, "christoffel")
    if boundary_distance(domain, x) < FD_CLEARANCE:
        raise DomainError(f"point within {FD_CLEARANCE} of the boundary; stencil would exit the domain")
    g_inv = metric_eval(domain, x).g_inv
    dg = _metric_derivatives(domain, x, h)
    # Gamma^i_jk = 1/2 g^il (d_j g_lk + d_k g_lj - d_l g_jk)
    sym = np.einsum("jlk->ljk", dg) + np.einsum("klj->ljk", dg) - dg
    return 0.5 * np.einsum("il,ljk->ijk", g_inv, sym)


def _christoffel_derivatives(domain: DomainSpec, x: np.ndarray) -> np.ndarray:
    """dG[m, i, j, k] = d Gamma^i_jk / d x_m, Richardson-extrapolated central diffs."""
    n = domain.n
    h = RICCI_STEP
    dG = np.empty((n, n, n, n))
    for m in range(n):
        e = np.zeros(n)
        e[m] = 1.0
        d1 = (christoffel(domain, x + h * e) - christoffel(domain, x - h * e)) / (2.0 * h)
        d2 = (christoffel(domain, x + 2 * h * e) - christoffel(domain, x - 2 * h * e)) / (4.0 * h)
        dG[m] = (4.0 * d1 - d2) / 3.0
    return dG


def ricci(domain: DomainSpec, x) -> np.ndarray:
    """Ricci tensor Ric_ij from the Christoffel symbols and their derivatives."""
    x = as_point(domain, x)
    _require_chart(domain, "ricci")
    if boundary_distance(domain, x) < FD_CLEARANCE + 2 * RICCI_STEP:
        raise DomainError("point too close to the boundary for the curvature stencil")
    G = christoffel(domain, x)
    dG = _christoffel_derivatives(domain, x)
    # Ric_ij = d_l Gamma^l_ji - d_j Gamma^l_li + Gamma^l_lk Gamma^k_ji - Gamma^l_jk Gamma^k_li
    term1 = np.einsum("llji->ji", dG)
    term2 = np.einsum("jlli->ji", dG)
    term3 = np.einsum("llk,kji->ji", G, G)
    term4 = np.einsum("ljk,kli->ji", G, G)
    ric = term1 - term2 + term3 - term4
    return 0.5 * (ric + ric.T)


def einstein_constant(domain: DomainSpec) -> float:
    """Constant k with Ric = k g.

    The ball is isometric to a portion of the unit n-sphere, so k = n - 1.
    The simplex metric is 4 times the square-root-map pullback of the ball
    metric (a homothety with ratio 2); rescaling a metric by c^2 leaves Ric
    unchanged, hence k = (n - 1) / 4 there.
    """
    if domain.n < 2:
        return 0.0
    if domain.kind == BALL:
        return float(domain.n - 1)
    if domain.kind == SIMPLEX:
        return (domain.n - 1) / 4.0
    return float(domain.n - 2)


def einstein_residual(domain: DomainSpec, x, k: float | None = None) -> float:
    """Max-norm of Ric - k g at x; k defaults to the domain's Einstein constant."""
    x = as_point(domain, x)
    if k is None:
        k = einstein_constant(domain)
    ric = ricci(domain, x)
    g = metric_eval(domain, x).g
    return float(np.max(np.abs(ric - k * g)))


# ---------------------------------------------------------------------------
# geodesics
# ---------------------------------------------------------------------------


def geodesic_distance(domain: DomainSpec, x, y) -> float:
    """Geodesic distance between two points, in closed form.

    Ball: lift both points to the open upper hemisphere with the positive
    root sqrt(1 - |x|^2) and take the great-circle distance.  Simplex: map
    through the componentwise square root into the ball and double the ball
    distance (the square-root map halves lengths).  Sphere: great circle.
    """
    if hasattr(x, "domain") and hasattr(y, "domain") and x.domain != y.domain:
        raise DomainError("points belong to different domains")
    x = as_point(domain, x)
    y = as_point(domain, y)
    if domain.kind == BALL:
        c = float(np.dot(x, y)) + np.sqrt(1.0 - float(np.dot(x, x))) * np.sqrt(1.0 - float(np.dot(y, y)))
        return float(np.arccos(np.clip(c, -1.0, 1.0)))
    if domain.kind == SIMPLEX:
        c = float(np.sum(np.sqrt(x * y))) + np.sqrt((1.0 - float(np.sum(x))) * (1.0 - float(np.sum(y))))
        return 2.0 * float(np.arccos(np.clip(c, -1.0, 1.0)))
    return float(np.arccos(np.clip(float(np.dot(x, y)), -1.0, 1.0)))


def _geodesic_rhs(domain: DomainSpec):
    n = domain.n
    if domain.kind == SPHERE:
        def rhs(_t, state):
            pos, vel = state[:n], state[n:]
            return np.concatenate([vel, -float(np.dot(vel, vel)) * pos])
        return rhs

    def rhs(_t, state):
        pos, vel = state[:n], state[n:]
        gamma = christoffel(domain, pos)
        acc = -np.einsum("ijk,j,k->i", gamma, vel, vel)
        return np.concatenate([vel, acc])

    return rhs


def geodesic_shoot(domain: DomainSpec, x, v, t: float = 1.0):
    """Integrate the geodesic equation from (x, v) for time t.

    Ball and simplex use the finite-difference Christoffel symbols in the
    chart; the sphere integrates the ambient great-circle equation
    gamma'' = -|gamma'|^2 gamma.  Returns the endpoint.
    """
    x = as_point(domain, x)
    v = np.asarray(v, dtype=float)
    sol = solve_ivp(
        _geodesic_rhs(domain),
        (0.0, t),
        np.concatenate([x, v]),
        method="DOP853",
        rtol=1e-11,
        atol=1e-11,
        dense_output=False,
    )
    if not sol.success:
        raise RuntimeError(f"geodesic integration failed: {sol.message}")
    end = sol.y[: domain.n, -1]
    if domain.kind == SPHERE:
        end = end / np.linalg.norm(end)
    return end


def _log_map_guess(domain: DomainSpec, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Initial velocity guess for the two-point problem, via the sphere lifts."""
    def sphere_log(p, q):
        c = np.clip(float(np.dot(p, q)), -1.0, 1.0)
        ang = np.arccos(c)
        if ang < 1e-14:
            return np.zeros_like(p)
        w = q - c * p
        return ang * w / np.linalg.norm(w)

    if domain.kind == SPHERE:
        return sphere_log(x, y)
    if domain.kind == BALL:
        lx = np.concatenate([x, [np.sqrt(1.0 - np.dot(x, x))]])
        ly = np.concatenate([y, [np.sqrt(1.0 - np.dot(y, y))]])
        return sphere_log(lx, ly)[: domain.n]
    sx, sy = np.sqrt(x), np.sqrt(y)
    lx = np.concatenate([sx, [np.sqrt(1.0 - np.sum(x))]])
    ly = np.concatenate([sy, [np.sqrt(1.0 - np.sum(y))]])
    w = sphere_log(lx, ly)[: domain.n]
    # chain rule through u -> u^2, times 2 for the homothety (x = u^2, dx = 2u du)
    return 2.0 * sx * w


def geodesic_distance_shooting(domain: DomainSpec, x, y, tol: float = 1e-9) -> float:
    """Distance by solving the two-point geodesic problem with ODE shooting.

    The initial velocity is refined until the time-1 endpoint matches y;
    the distance is then the (constant) speed sqrt(v^T g(x) v).  Serves as
    an independent check of the closed forms.
    """
    x = as_point(domain, x)
    y = as_point(domain, y)
    if np.allclose(x, y):
        return 0.0

    def miss(v):
        return geodesic_shoot(domain, x, v) - y

    v0 = _log_map_guess(domain, x, y)
    res = least_squares(miss, v0, xtol=1e-14, ftol=1e-14, gtol=None)
    if np.linalg.norm(res.fun) > tol:
        raise RuntimeError(f"shooting failed to hit the target: |miss| = {np.linalg.norm(res.fun):.3e}")
    return baran_length(domain, x, res.x)


# ---------------------------------------------------------------------------
# collar volume
# ---------------------------------------------------------------------------


def incomplete_beta(a: float, b: float, z: float) -> float:
    """Lower incomplete beta integral int_0^z t^(a-1) (1-t)^(b-1) dt.

    Computed by adaptive quadrature after t = u^2, which removes the
    endpoint singularity for a = 1/2.
    """
    if not 0.0 <= z <= 1.0:
        raise ValueError("z must lie in [0, 1]")
    val, _err = quad(lambda u: 2.0 * u ** (2.0 * a - 1.0) * (1.0 - u * u) ** (b - 1.0),
                     0.0, np.sqrt(z), epsabs=1e-13, epsrel=1e-13, limit=200)
    return float(val)


def collar_volume(n: int, eps: float) -> float:
    """Equilibrium volume pi * beta(1/2, n/2, sin(eps)^2) of the boundary collar.

    The collar of width eps is the set of ball points within geodesic
    distance eps of the boundary, i.e. cos(eps) < |x| < 1.  The leading
    constant pi matches the n = 2 normalisation, where the full collar
    (eps = pi/2) carries the total mass 2 pi.
    """
    if n < 1:
        raise ValueError("dimension must be >= 1")
    if not 0.0 < eps <= np.pi / 2:
        raise ValueError("eps must lie in (0, pi/2]")
    s = np.sin(eps)
    return float(np.pi) * incomplete_beta(0.5, n / 2.0, float(s * s))
