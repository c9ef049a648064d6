"""Quadrature rules for the equilibrium measures of ball, simplex and sphere.

The ball rule tensorises Gauss-Jacobi rules through the triangular change of
variables x_i = t_i * sqrt(1 - x_1^2 - ... - x_{i-1}^2), under which the
measure (1 - |x|^2)^(-1/2) dx factorises into symmetric Jacobi weights
(1 - t_i^2)^((n-i-1)/2) dt_i.  The simplex routes through the componentwise
square substitution x = u^2, which turns integrals against
((1 - sum x) prod x_i)^(-1/2) dx into plain ball integrals of even
polynomials.  Sphere rules are product angular rules with the constant
equilibrium density.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gamma, pi

import numpy as np

from .domains import BALL, SIMPLEX, SPHERE, DomainSpec
from .orthopoly1d import JacobiParams, gauss_jacobi_nodes_weights

#: largest admissible polynomial exactness requested from domain_rule
MAX_EXACTNESS = 24


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes (N, chart_dim), positive weights (N,), and the certified exactness."""

    domain: DomainSpec
    nodes: np.ndarray
    weights: np.ndarray
    exactness_degree: int

    @property
    def total_mass(self) -> float:
        return float(np.sum(self.weights))

    def integrate(self, f) -> float:
        return float(np.dot(self.weights, f(self.nodes)))


def gauss_jacobi_rule(m: int, p: JacobiParams):
    """m-point Gauss rule for (1-t)^a (1+t)^b on (-1, 1); exact to degree 2m - 1."""
    return gauss_jacobi_nodes_weights(m, p)


def _ball_tensor_rule(n: int, nodes_per_axis: int):
    """1D node/weight lists of the triangular ball construction."""
    axes = []
    for i in range(n):
        a = (n - i - 2) / 2.0  # (n - j - 1)/2 with 1-based j = i + 1
        t, w = gauss_jacobi_nodes_weights(nodes_per_axis, JacobiParams(a, a))
        axes.append((t, w))
    return axes


def _tensor_ball_nodes(n: int, axes):
    """Map tensor (t_1, ..., t_n) nodes into ball points; weights multiply."""
    grids = np.meshgrid(*[t for t, _ in axes], indexing="ij")
    wgrids = np.meshgrid(*[w for _, w in axes], indexing="ij")
    t = np.stack([g.ravel() for g in grids], axis=-1)
    w = np.ones(t.shape[0])
    for g in wgrids:
        w = w * g.ravel()
    x = np.empty_like(t)
    rem = np.ones(t.shape[0])  # 1 - x_1^2 - ... - x_{i-1}^2
    for i in range(n):
        x[:, i] = t[:, i] * np.sqrt(rem)
        rem = rem * (1.0 - t[:, i] ** 2)
    return x, w


def domain_rule(domain: DomainSpec, exactness: int, nodes_per_axis: int | None = None) -> QuadratureRule:
    """Rule integrating all polynomials of total degree <= exactness against
    the equilibrium measure of the domain.

    ``nodes_per_axis`` overrides the default count ceil((exactness + 2) / 2)
    (used by the doubled-size exactness certificates).
    """
    if exactness < 0:
        raise ValueError("exactness must be nonnegative")
    if exactness > MAX_EXACTNESS:
        raise ValueError(f"exactness limited to {MAX_EXACTNESS}")
    n = domain.n
    if domain.kind == BALL:
        m = nodes_per_axis or (exactness + 2 + 1) // 2
        x, w = _tensor_ball_nodes(n, _ball_tensor_rule(n, m))
        return QuadratureRule(domain, x, w, exactness)
    if domain.kind == SIMPLEX:
        # f(x) dmu_simplex = f(u^2) dmu_ball needs ball exactness 2 * exactness;
        # even node counts keep every u_i nonzero, so nodes stay strictly interior
        m = nodes_per_axis or (2 * exactness + 2 + 1) // 2
        if m % 2:
            m += 1
        u, w = _tensor_ball_nodes(n, _ball_tensor_rule(n, m))
        return QuadratureRule(domain, u * u, w, exactness)
    return _sphere_rule(domain, exactness, nodes_per_axis)


def _sphere_rule(domain: DomainSpec, exactness: int, nodes_per_axis: int | None) -> QuadratureRule:
    n = domain.n
    density = gamma(n / 2.0) / (2.0 * pi ** (n / 2.0))
    if n == 2:
        m = nodes_per_axis or max(exactness + 1, 4)
        phi = 2 * pi * np.arange(m) / m
        x = np.stack([np.cos(phi), np.sin(phi)], axis=-1)
        w = np.full(m, density * 2 * pi / m)
        return QuadratureRule(domain, x, w, exactness)
    if n == 3:
        mz = nodes_per_axis or (exactness + 2 + 1) // 2
        mphi = max(exactness + 1, 2 * mz)
        z, wz = gauss_jacobi_nodes_weights(mz, JacobiParams(0.0, 0.0))
        phi = 2 * pi * np.arange(mphi) / mphi
        zz, pp = np.meshgrid(z, phi, indexing="ij")
        s = np.sqrt(1.0 - zz ** 2)
        x = np.stack([s * np.cos(pp), s * np.sin(pp), zz], axis=-1).reshape(-1, 3)
        w = (np.repeat(wz, mphi) * (2 * pi / mphi)) * density
        return QuadratureRule(domain, x, w, exactness)
    raise ValueError("sphere rules are implemented for n in {2, 3}; higher n supports zonal integrals only")


def inner_product(rule: QuadratureRule, f, g) -> float:
    """Bilinear pairing sum w_i f(x_i) g(x_i) against the rule's measure."""
    fx = np.asarray(f(rule.nodes), dtype=float)
    gx = np.asarray(g(rule.nodes), dtype=float)
    return float(np.dot(rule.weights, fx * gx))


def gram_matrix(domain: DomainSpec, max_degree: int, rule: QuadratureRule | None = None):
    """Pairwise inner products of all basis functions of degree <= max_degree.

    Returns (indices, matrix) where the i-th row/column corresponds to
    indices[i].  The rule must be exact to 2 * max_degree; one is built if
    not supplied.
    """
    from . import bases

    if rule is None:
        rule = domain_rule(domain, 2 * max_degree)
    if rule.exactness_degree < 2 * max_degree:
        raise ValueError("rule exactness must cover twice the basis degree")
    if domain.kind == SPHERE:
        labels, funcs = zip(*bases.sphere_harmonic_basis(domain.n, max_degree))
    else:
        labels = bases.enumerate_indices(domain.n, max_degree)
        evaluator = bases.ball_basis_eval if domain.kind == BALL else bases.simplex_basis_eval
        funcs = [lambda x, a=idx.alpha: evaluator(a, x) for idx in labels]
    vals = np.stack([np.asarray(f(rule.nodes), dtype=float) for f in funcs], axis=0)
    mat = (vals * rule.weights) @ vals.T
    return list(labels), 0.5 * (mat + mat.T)
