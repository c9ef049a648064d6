"""Laplace-Beltrami operators in closed polynomial form and by finite differences.

Both closed forms use the nonnegative convention L = -Delta, so that the
orthogonal bases satisfy L phi = lambda phi with lambda >= 0:

    ball:    L f = -[ sum_i d2_ii f - sum_{i,j} x_i x_j d2_ij f - n sum_i x_i d_i f ]
    simplex: L f = -[ sum_i x_i (1 - x_i) d2_ii f - 2 sum_{i<j} x_i x_j d2_ij f
                      + 1/2 sum_i (1 - (n+1) x_i) d_i f ]

Each is the expansion of (1/sqrt(det g)) d_i (sqrt(det g) g^ij d_j f) with the
closed-form inverse metric; the generic divergence-form finite-difference
path below double-checks the expansions (lb_apply_numeric agrees with them
to the finite-difference tolerance).  The simplex diagonal coefficient is
x_i (1 - x_i): with the bare x_i the operator does not match the divergence
form of the simplex metric.
"""

from __future__ import annotations

import numpy as np

from .domains import BALL, SIMPLEX, SPHERE, DomainError, DomainSpec, as_point, boundary_distance, interior_grid
from .geometry import metric_eval
from .polynomials import PolyN

#: step for divergence-form central differences
NUMERIC_STEP = 1e-4
#: boundary clearance required by the numeric stencil
NUMERIC_CLEARANCE = 1e-3


def lb_apply_ball(f: PolyN) -> PolyN:
    """Apply the ball operator L = -Delta to a polynomial, exactly."""
    n = f.n
    out = PolyN.zero(n)
    for i in range(n):
        fi = f.partial(i)
        fii = fi.partial(i)
        out = out + fii
        # -n x_i d_i f
        e = [0] * n
        e[i] = 1
        out = out - fi.shift_mul(tuple(e), float(n))
        # -x_i x_j d2_ij f over all ordered pairs (i, j)
        for j in range(n):
            eij = [0] * n
            eij[i] += 1
            eij[j] += 1
            out = out - fi.partial(j).shift_mul(tuple(eij))
    return out.scale(-1.0)


def lb_apply_simplex(f: PolyN) -> PolyN:
    """Apply the simplex operator L = -Delta to a polynomial, exactly."""
    n = f.n
    out = PolyN.zero(n)
    for i in range(n):
        fi = f.partial(i)
        fii = fi.partial(i)
        ei = [0] * n
        ei[i] = 1
        eii = [0] * n
        eii[i] = 2
        # x_i (1 - x_i) d2_ii f
        out = out + fii.shift_mul(tuple(ei)) - fii.shift_mul(tuple(eii))
        # 1/2 (1 - (n+1) x_i) d_i f
        out = out + fi.scale(0.5) - fi.shift_mul(tuple(ei), (n + 1) / 2.0)
        # -2 x_i x_j d2_ij f for i < j
        for j in range(i + 1, n):
            eij = [0] * n
            eij[i] += 1
            eij[j] += 1
            out = out - fi.partial(j).shift_mul(tuple(eij), 2.0)
    return out.scale(-1.0)


def lb_apply(domain: DomainSpec, f: PolyN) -> PolyN:
    if domain.kind == BALL:
        return lb_apply_ball(f)
    if domain.kind == SIMPLEX:
        return lb_apply_simplex(f)
    raise ValueError("exact operator application is defined for ball and simplex")


# ---------------------------------------------------------------------------
# divergence-form finite differences
# ---------------------------------------------------------------------------


def _flux(domain: DomainSpec, f, y: np.ndarray, h: float) -> np.ndarray:
    """sqrt(det g) g^ij d_j f at y, gradient by central differences."""
    n = domain.n
    grad = np.empty(n)
    for j in range(n):
        e = np.zeros(n)
        e[j] = h
        grad[j] = (f(y + e) - f(y - e)) / (2.0 * h)
    m = metric_eval(domain, y)
    return m.sqrt_det * (m.g_inv @ grad)


def lb_apply_numeric(domain: DomainSpec, f, x, h: float = NUMERIC_STEP) -> float:
    """L f at x through the divergence form, by nested central differences.

    ``f`` maps a coordinate vector to a float.  Ball and simplex difference
    the chart coordinates directly; the sphere (n = 3) works in a
    latitude/longitude chart, so the point must stay clear of the poles.
    Sign matches the exact path (L = -Delta).
    """
    x = as_point(domain, x)
    if domain.kind == SPHERE:
        return _lb_numeric_sphere(domain, f, x, h)
    if boundary_distance(domain, x) < NUMERIC_CLEARANCE:
        raise DomainError(f"point within {NUMERIC_CLEARANCE} of the boundary; stencil would exit the domain")
    n = domain.n
    div = 0.0
    for i in range(n):
        e = np.zeros(n)
        e[i] = h
        div += (_flux(domain, f, x + e, h)[i] - _flux(domain, f, x - e, h)[i]) / (2.0 * h)
    return -div / metric_eval(domain, x).sqrt_det


def _lb_numeric_sphere(domain: DomainSpec, f, x: np.ndarray, h: float) -> float:
    if domain.n != 3:
        raise ValueError("numeric sphere operator is implemented for n = 3")
    if 1.0 - abs(float(x[2])) < 0.05:
        raise DomainError("point too close to the chart poles (|x3| ~ 1)")
    theta0 = float(np.arcsin(np.clip(x[2], -1.0, 1.0)))
    phi0 = float(np.arctan2(x[1], x[0]))

    def ambient(theta, phi):
        return np.array([np.cos(theta) * np.cos(phi), np.cos(theta) * np.sin(phi), np.sin(theta)])

    def F(theta, phi):
        return f(ambient(theta, phi))

    # round metric in (theta, phi): diag(1, cos^2 theta), volume cos(theta)
    def flux_theta(theta):
        return np.cos(theta) * (F(theta + h, phi0) - F(theta - h, phi0)) / (2.0 * h)

    def flux_phi(phi):
        return (F(theta0, phi + h) - F(theta0, phi - h)) / (2.0 * h) / np.cos(theta0)

    div = (flux_theta(theta0 + h) - flux_theta(theta0 - h)) / (2.0 * h)
    div += (flux_phi(phi0 + h) - flux_phi(phi0 - h)) / (2.0 * h)
    return -float(div / np.cos(theta0))


# ---------------------------------------------------------------------------
# residuals and quadratic forms
# ---------------------------------------------------------------------------


def eigen_residual(domain: DomainSpec, alpha, grid_size: int = 40) -> float:
    """Relative sup-norm of (L phi_alpha - lambda phi_alpha) over an interior grid."""
    from .bases import _alpha_tuple, basis_poly, eigenvalue

    alpha = _alpha_tuple(alpha)
    phi = basis_poly(domain, alpha)
    lam = eigenvalue(domain, sum(alpha))
    resid = lb_apply(domain, phi) - phi.scale(lam)
    if not resid.coeffs:
        return 0.0
    grid = interior_grid(domain, grid_size)
    denom = float(np.max(np.abs(phi(grid))))
    return float(np.max(np.abs(resid(grid)))) / denom


def dirichlet_form(domain: DomainSpec, u: PolyN, v: PolyN, rule=None) -> float:
    """Energy pairing int <grad u, grad v>_g dmu by quadrature.

    Equals <L u, v> for polynomials (no boundary terms survive), which is
    the symmetry identity the tests exercise.
    """
    from .quadrature import domain_rule

    if rule is None:
        deg = max(u.degree, 1) + max(v.degree, 1)
        rule = domain_rule(domain, deg)
    du = u.gradient()
    dv = v.gradient()
    pts = rule.nodes
    du_vals = np.stack([g(pts) for g in du], axis=-1)
    dv_vals = np.stack([g(pts) for g in dv], axis=-1)
    # both inverse metrics are diagonal-minus-rank-one: I - x x^T, diag(x) - x x^T
    rank_one = np.einsum("ki,ki->k", du_vals, pts) * np.einsum("ki,ki->k", dv_vals, pts)
    if domain.kind == BALL:
        total = np.einsum("ki,ki->k", du_vals, dv_vals) - rank_one
    elif domain.kind == SIMPLEX:
        total = np.einsum("ki,ki,ki->k", du_vals, dv_vals, pts) - rank_one
    else:
        raise ValueError("Dirichlet form is defined for ball and simplex")
    return float(np.dot(rule.weights, total))
