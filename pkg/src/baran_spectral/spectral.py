"""Fourier analysis against the equilibrium measure, and the Baran inequality.

Coefficients are taken against the orthonormalized basis, so Parseval sums
and the Sobolev partial sums read off directly from the coefficient map.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import sqrt

import numpy as np

from .bases import ball_basis_eval, basis_norm_sq, enumerate_indices, eigenvalue, simplex_basis_eval
from .domains import BALL, SIMPLEX, SPHERE, DomainError, DomainSpec, as_point
from .geometry import baran_length
from .polynomials import PolyN, random_polynomial
from .quadrature import QuadratureRule, domain_rule


@dataclass(frozen=True)
class SpectralExpansion:
    """Coefficients against the orthonormalized basis, up to max_degree."""

    domain: DomainSpec
    coeffs: dict
    max_degree: int

    def coefficient(self, alpha) -> float:
        return self.coeffs.get(tuple(alpha), 0.0)

    def parseval_sum(self) -> float:
        return float(sum(c * c for c in self.coeffs.values()))

    def degree_energies(self) -> dict:
        """Map degree s -> sum of |u_alpha|^2 over |alpha| = s."""
        out: dict = {}
        for a, c in self.coeffs.items():
            s = sum(a)
            out[s] = out.get(s, 0.0) + c * c
        return out


def _basis_eval(domain: DomainSpec):
    if domain.kind == BALL:
        return ball_basis_eval
    if domain.kind == SIMPLEX:
        return simplex_basis_eval
    raise ValueError("spectral projection is defined for ball and simplex")


def project(
    domain: DomainSpec,
    f,
    max_degree: int,
    f_degree: int | None = None,
    rule: QuadratureRule | None = None,
) -> SpectralExpansion:
    """Fourier coefficients of f against the orthonormalized basis.

    The quadrature rule must be exact to deg(f) + max_degree when f is a
    polynomial; by default one of exactness max_degree + (f_degree or
    max_degree) is built.  For non-polynomial f pass a generous f_degree.
    """
    evaluator = _basis_eval(domain)
    if isinstance(f, PolyN) and f_degree is None:
        f_degree = max(f.degree, 0)
    if rule is None:
        rule = domain_rule(domain, max_degree + (f_degree if f_degree is not None else max_degree))
    fx = np.asarray(f(rule.nodes), dtype=float)
    coeffs = {}
    for idx in enumerate_indices(domain.n, max_degree):
        a = idx.alpha
        vals = evaluator(a, rule.nodes)
        coeffs[a] = float(np.dot(rule.weights, fx * vals)) / sqrt(basis_norm_sq(domain, a))
    return SpectralExpansion(domain=domain, coeffs=coeffs, max_degree=max_degree)


def evaluate_expansion(e: SpectralExpansion, x):
    """Value sum_alpha u_alpha phi_alpha(x)/|phi_alpha| at x (vectorised)."""
    evaluator = _basis_eval(e.domain)
    pts = np.asarray(x, dtype=float)
    single = pts.ndim == 1
    out = np.zeros(1 if single else pts.shape[0])
    for a, c in e.coeffs.items():
        if c == 0.0:
            continue
        out = out + c * np.atleast_1d(evaluator(a, pts)) / sqrt(basis_norm_sq(e.domain, a))
    return float(out[0]) if single else out


def sobolev_sums(e: SpectralExpansion):
    """Partial sums (S2, S1) with S_p = sum_s lambda_s^p sum_{|alpha|=s} |u_alpha|^2.

    Finite S1 along a refinement sequence signals membership in H^1, finite
    S2 membership in the operator domain; only partial sums are reported,
    membership itself is not decidable from finitely many coefficients.
    """
    s1 = 0.0
    s2 = 0.0
    for s, energy in e.degree_energies().items():
        lam = eigenvalue(e.domain, s)
        s1 += lam * energy
        s2 += lam * lam * energy
    return s2, s1


# ---------------------------------------------------------------------------
# Baran inequality
# ---------------------------------------------------------------------------


def baran_margin(domain: DomainSpec, p: PolyN, x, v) -> float:
    """Slack of the Bernstein-type tangential inequality at (x, v):

        deg(p) * sqrt(v^T g(x) v) - |Dp(x) . v| / sqrt(1 - p(x)^2)

    Nonnegative whenever sup |p| <= 1 on the domain; zero for Chebyshev
    polynomials on the interval, the classical equality case.  Requires
    |p(x)| < 1 so the denominator does not degenerate.
    """
    x = as_point(domain, x)
    v = np.asarray(v, dtype=float)
    px = float(p(x))
    if abs(px) >= 1.0:
        raise ValueError(f"margin undefined where |p(x)| >= 1, got p(x) = {px}")
    deg = max(p.degree, 0)
    grad = np.array([g(x) for g in p.gradient()])
    if domain.kind == SPHERE:
        v_eff = v - float(np.dot(v, x)) * x
    else:
        v_eff = v
    deriv = abs(float(np.dot(grad, v_eff)))
    return deg * baran_length(domain, x, v) - deriv / sqrt(1.0 - px * px)


def _sup_sample(domain: DomainSpec, rng: np.random.Generator, count: int = 2000) -> np.ndarray:
    """Sample points spread over the closed domain for sup-norm estimation."""
    n = domain.n
    if domain.kind == BALL:
        pts = rng.uniform(-1.0, 1.0, size=(3 * count, n))
        pts = pts[np.einsum("ij,ij->i", pts, pts) < 1.0][:count]
        shell = rng.normal(size=(count // 4, n))
        shell /= np.linalg.norm(shell, axis=1, keepdims=True)
        return np.vstack([pts, 0.999999 * shell])
    if domain.kind == SIMPLEX:
        pts = rng.dirichlet(np.ones(n + 1), size=count)[:, :n]
        return np.clip(pts, 1e-9, None)
    pts = rng.normal(size=(count, n))
    return pts / np.linalg.norm(pts, axis=1, keepdims=True)


def baran_fuzz(domain: DomainSpec, samples: int, max_degree: int = 10, seed: int = 0):
    """Seeded inequality fuzz: random polynomials, sup-normalised with a 1.01
    safety factor, probed at random interior points and unit tangents.

    Returns (min_margin, violations) where violations counts margins below
    -1e-9.
    """
    from .domains import random_interior_point, random_tangent

    rng = np.random.default_rng(seed)
    grid = _sup_sample(domain, rng)
    min_margin = np.inf
    violations = 0
    for _ in range(samples):
        deg = int(rng.integers(1, max_degree + 1))
        p = random_polynomial(domain.n, deg, rng)
        sup = float(np.max(np.abs(p(grid))))
        p = p.scale(1.0 / (1.01 * sup))
        while True:
            if domain.kind == SPHERE:
                x = _unit(rng, domain.n)
            else:
                x = random_interior_point(domain, rng, margin=1e-3)
            if abs(float(p(x))) < 1.0:
                break
        v = random_tangent(domain, x, rng)
        margin = baran_margin(domain, p, x, v)
        min_margin = min(min_margin, margin)
        if margin < -1e-9:
            violations += 1
    return float(min_margin), violations


def _unit(rng: np.random.Generator, n: int) -> np.ndarray:
    v = rng.normal(size=n)
    return v / np.linalg.norm(v)
