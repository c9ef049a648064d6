"""One-dimensional building blocks: Chebyshev and monic Jacobi polynomials.

Monic Jacobi polynomials J_m^{a,b} are orthogonal for the weight
(1-t)^a (1+t)^b on (-1, 1) and are generated by the three-term recurrence

    p_{m+1}(t) = (t - alpha_m) p_m(t) - beta_m p_{m-1}(t)

with the standard recurrence coefficients in terms of a, b, m.  Monic
Gegenbauer polynomials are the symmetric special case a = b = lambda - 1/2.

Coefficient vectors are kept in the monomial basis up to degree 24; beyond
that the conditioning of the monomial representation is no longer trusted
and the module refuses.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gamma

import numpy as np
from scipy.linalg import eigh_tridiagonal

#: largest degree stored in the monomial basis
MAX_DEGREE = 24


@dataclass(frozen=True)
class JacobiParams:
    """Weight exponents of (1-t)^a (1+t)^b; both must exceed -1 for integrability."""

    a: float
    b: float

    def __post_init__(self):
        if not (self.a > -1.0 and self.b > -1.0):
            raise ValueError(f"Jacobi parameters must satisfy a, b > -1, got ({self.a}, {self.b})")


@dataclass(frozen=True)
class Poly1D:
    """Polynomial in the monomial basis, coefficients in ascending degree."""

    coeffs: tuple

    @staticmethod
    def of(coeffs) -> "Poly1D":
        c = np.atleast_1d(np.asarray(coeffs, dtype=float))
        if c.size - 1 > MAX_DEGREE:
            raise ValueError(f"monomial representation limited to degree {MAX_DEGREE}")
        while c.size > 1 and c[-1] == 0.0:
            c = c[:-1]
        return Poly1D(tuple(float(v) for v in c))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.coeffs, dtype=float)

    def __call__(self, t):
        return poly_eval(self, t)


def poly_eval(p: Poly1D, t):
    """Horner evaluation; ``t`` may be a scalar or array."""
    t = np.asarray(t, dtype=float)
    out = np.zeros_like(t)
    for c in reversed(p.coeffs):
        out = out * t + c
    return out if out.ndim else float(out)


def poly_derivative(p: Poly1D) -> Poly1D:
    """Exact coefficientwise derivative."""
    c = p.array
    if c.size == 1:
        return Poly1D.of([0.0])
    return Poly1D.of(c[1:] * np.arange(1, c.size))


def chebyshev_eval(kind: str, k: int, t):
    """Evaluate T_k (kind="first") or U_k (kind="second") by the stable recurrence.

    Requires |t| <= 1 so that |T_k| <= 1 holds and endpoint values are exact.
    """
    if kind not in ("first", "second"):
        raise ValueError(f"kind must be 'first' or 'second', got {kind!r}")
    if k < 0:
        raise ValueError("degree must be nonnegative")
    t = np.asarray(t, dtype=float)
    if np.any(np.abs(t) > 1.0):
        raise ValueError("Chebyshev evaluation requires |t| <= 1")
    prev = np.ones_like(t)
    if k == 0:
        return prev if prev.ndim else float(prev)
    cur = t.copy() if kind == "first" else 2.0 * t
    for _ in range(k - 1):
        prev, cur = cur, 2.0 * t * cur - prev
    return cur if cur.ndim else float(cur)


def chebyshev_poly(kind: str, k: int) -> Poly1D:
    """Monomial coefficients of T_k or U_k (exact integers in double precision)."""
    if kind not in ("first", "second"):
        raise ValueError(f"kind must be 'first' or 'second', got {kind!r}")
    if k > MAX_DEGREE:
        raise ValueError(f"monomial representation limited to degree {MAX_DEGREE}")
    prev = np.array([1.0])
    if k == 0:
        return Poly1D.of(prev)
    cur = np.array([0.0, 1.0]) if kind == "first" else np.array([0.0, 2.0])
    for _ in range(k - 1):
        nxt = np.zeros(cur.size + 1)
        nxt[1:] = 2.0 * cur
        nxt[: prev.size] -= prev
        prev, cur = cur, nxt
    return Poly1D.of(cur)


def jacobi_recurrence(m: int, p: JacobiParams):
    """First ``m`` recurrence coefficients (alpha_k, beta_k) for the monic family.

    beta_0 is the total weight mass 2^{a+b+1} B(a+1, b+1); it enters the
    Golub-Welsch weights, the value recurrence never uses it.
    """
    a, b = p.a, p.b
    alphas = np.zeros(m)
    betas = np.zeros(m)
    if m == 0:
        return alphas, betas
    alphas[0] = (b - a) / (a + b + 2.0)
    betas[0] = 2.0 ** (a + b + 1.0) * gamma(a + 1.0) * gamma(b + 1.0) / gamma(a + b + 2.0)
    for k in range(1, m):
        den = (2.0 * k + a + b) * (2.0 * k + a + b + 2.0)
        alphas[k] = (b * b - a * a) / den
        if k == 1:
            betas[1] = 4.0 * (a + 1.0) * (b + 1.0) / ((a + b + 2.0) ** 2 * (a + b + 3.0))
        else:
            betas[k] = (
                4.0 * k * (k + a) * (k + b) * (k + a + b)
                / ((2.0 * k + a + b) ** 2 * (2.0 * k + a + b + 1.0) * (2.0 * k + a + b - 1.0))
            )
    return alphas, betas


def monic_jacobi_eval(m: int, p: JacobiParams, t):
    """Value of the degree-m monic Jacobi polynomial by the three-term recurrence."""
    if m < 0:
        raise ValueError("degree must be nonnegative")
    t = np.asarray(t, dtype=float)
    prev = np.ones_like(t)
    if m == 0:
        return prev if prev.ndim else float(prev)
    alphas, betas = jacobi_recurrence(m, p)
    cur = t - alphas[0]
    for k in range(1, m):
        prev, cur = cur, (t - alphas[k]) * cur - betas[k] * prev
    return cur if cur.ndim else float(cur)


def monic_jacobi_poly(m: int, p: JacobiParams) -> Poly1D:
    """Monomial coefficients of the degree-m monic Jacobi polynomial."""
    if m > MAX_DEGREE:
        raise ValueError(f"monomial representation limited to degree {MAX_DEGREE}")
    prev = np.array([1.0])
    if m == 0:
        return Poly1D.of(prev)
    alphas, betas = jacobi_recurrence(m, p)
    cur = np.array([-alphas[0], 1.0])
    for k in range(1, m):
        nxt = np.zeros(cur.size + 1)
        nxt[1:] = cur
        nxt[:-1] -= alphas[k] * cur
        nxt[: prev.size] -= betas[k] * prev
        prev, cur = cur, nxt
    return Poly1D.of(cur)


def gauss_jacobi_nodes_weights(m: int, p: JacobiParams):
    """m-point Gauss rule for the weight (1-t)^a (1+t)^b via Golub-Welsch.

    Exact for polynomials of degree <= 2m - 1.  Returns (nodes, weights)
    with nodes ascending and weights strictly positive.
    """
    if m < 1:
        raise ValueError("node count must be >= 1")
    alphas, betas = jacobi_recurrence(m, p)
    if m == 1:
        return np.array([alphas[0]]), np.array([betas[0]])
    nodes, vecs = eigh_tridiagonal(alphas, np.sqrt(betas[1:]))
    weights = betas[0] * vecs[0, :] ** 2
    return nodes, weights


def weighted_norm_sq(f: Poly1D, p: JacobiParams) -> float:
    """Integral of f^2 against (1-t)^a (1+t)^b, by Gauss quadrature exact for the degree."""
    m = f.degree + 1
    nodes, weights = gauss_jacobi_nodes_weights(m, p)
    vals = poly_eval(f, nodes)
    return float(np.dot(weights, vals * vals))
