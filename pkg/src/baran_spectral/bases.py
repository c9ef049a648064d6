"""Orthogonal polynomial bases for the equilibrium measures, and their spectra.

Ball basis (index alpha in N^n, written 0-based with prefix p_j = sum_{k<j} x_k^2):

    phi_alpha(x) = [prod_{j<n-1} (1-p_j)^(alpha_j/2) C^{lam_j}_{alpha_j}(x_j / sqrt(1-p_j))]
                   * (1-p_{n-1})^(alpha_{n-1}/2) T_{alpha_{n-1}}(x_{n-1} / sqrt(1-p_{n-1}))

with lam_j = (n-1-j)/2 + sum_{k>j} alpha_k and C^s_t the monic Gegenbauer
polynomial J_t^{s-1/2, s-1/2}.  Every square root cancels by parity, so
phi_alpha is a polynomial of exact total degree |alpha|.

Simplex basis (R_j = 1 - sum_{k<j} x_k):

    psi_alpha(x) = prod_j R_j^{alpha_j} J_{alpha_j}^{a_j, -1/2}(2 x_j / R_j - 1),
    a_j = 2 sum_{k>j} alpha_k + (n-j-2)/2.

The trailing-sum convention for a_j is the one singled out by the
orthogonality tests; summing over leading indices breaks Gram diagonality.

Both families diagonalise the Laplace-Beltrami operator of their metric;
the eigenvalue of degree s is s(s+n-1) on the ball and s(s+(n-1)/2) on the
simplex (the simplex value is a quarter of the degree-2s ball eigenvalue,
through the square-root homothety).  Sphere: s(s+n-2), spherical harmonics.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial, pi, sqrt

import numpy as np
from scipy.special import lpmv

from .domains import BALL, SIMPLEX, SPHERE, DomainError, DomainSpec
from .orthopoly1d import (
    JacobiParams,
    chebyshev_eval,
    chebyshev_poly,
    monic_jacobi_eval,
    monic_jacobi_poly,
    weighted_norm_sq,
)
from .polynomials import PolyN


@dataclass(frozen=True)
class MultiIndex:
    """Label alpha of a basis function; degree is the component sum."""

    alpha: tuple

    @staticmethod
    def of(alpha) -> "MultiIndex":
        t = tuple(int(a) for a in alpha)
        if any(a < 0 for a in t):
            raise ValueError(f"multi-index entries must be nonnegative, got {t}")
        return MultiIndex(t)

    @property
    def degree(self) -> int:
        return sum(self.alpha)

    def __len__(self):
        return len(self.alpha)


def _alpha_tuple(alpha) -> tuple:
    if isinstance(alpha, MultiIndex):
        return alpha.alpha
    return MultiIndex.of(alpha).alpha


def enumerate_indices(n: int, max_degree: int) -> list[MultiIndex]:
    """All indices with |alpha| <= max_degree, ordered by degree then lexicographically.

    The count is binomial(n + max_degree, n).
    """
    if n < 1:
        raise ValueError("dimension must be >= 1")
    out = []

    def rec(prefix, remaining, slots):
        if slots == 1:
            out.append(prefix + (remaining,))
            return
        for v in range(remaining + 1):
            rec(prefix + (v,), remaining - v, slots - 1)

    indices = []
    for d in range(max_degree + 1):
        out = []
        rec((), d, n)
        indices.extend(sorted(out))
    return [MultiIndex(a) for a in indices]


def eigenvalue(domain: DomainSpec, s: int) -> float:
    """Laplace-Beltrami eigenvalue of the degree-s eigenspace."""
    if s < 0:
        raise ValueError("degree must be nonnegative")
    n = domain.n
    if domain.kind == BALL:
        return float(s * (s + n - 1))
    if domain.kind == SIMPLEX:
        return s * (s + (n - 1) / 2.0)
    return float(s * (s + n - 2))


# ---------------------------------------------------------------------------
# ball
# ---------------------------------------------------------------------------


def _as_points(x, n: int):
    pts = np.asarray(x, dtype=float)
    single = pts.ndim == 1
    if single:
        pts = pts[None, :]
    if pts.shape[-1] != n:
        raise ValueError(f"points must have {n} coordinates")
    return pts, single


def _check_ball_interior(pts: np.ndarray):
    if np.any(np.einsum("ij,ij->i", pts, pts) >= 1.0):
        raise DomainError("ball basis evaluation requires |x| < 1 strictly")


def _check_simplex_interior(pts: np.ndarray):
    if np.any(pts <= 0.0) or np.any(pts.sum(axis=1) >= 1.0):
        raise DomainError("simplex basis evaluation requires x_i > 0 and sum(x) < 1 strictly")


def _ball_lambda(alpha: tuple, j: int) -> float:
    n = len(alpha)
    return (n - 1 - j) / 2.0 + sum(alpha[j + 1 :])


def ball_basis_eval(alpha, x):
    """Value of phi_alpha at x (shape (n,) or (N, n)) by composed 1D recurrences."""
    alpha = _alpha_tuple(alpha)
    n = len(alpha)
    pts, single = _as_points(x, n)
    _check_ball_interior(pts)
    val = np.ones(pts.shape[0])
    rem = np.ones(pts.shape[0])  # 1 - sum_{k<j} x_k^2
    for j in range(n):
        t = pts[:, j] / np.sqrt(rem)
        if j < n - 1:
            lam = _ball_lambda(alpha, j)
            f = monic_jacobi_eval(alpha[j], JacobiParams(lam - 0.5, lam - 0.5), t)
        else:
            f = chebyshev_eval("first", alpha[j], np.clip(t, -1.0, 1.0))
        val = val * rem ** (alpha[j] / 2.0) * f
        rem = rem - pts[:, j] ** 2
    return float(val[0]) if single else val


def _poly_from_even_factor(coeffs, n: int, j: int, u: PolyN) -> PolyN:
    """Expand sum_i c_i x_j^i u^((deg-i)/2) for a parity-pure coefficient vector."""
    deg = len(coeffs) - 1
    out = PolyN.zero(n)
    for i, ci in enumerate(coeffs):
        if abs(ci) == 0.0:
            continue
        if (deg - i) % 2:
            raise AssertionError("symmetric 1D family lost its parity")
        e = [0] * n
        e[j] = i
        out = out + u.pow((deg - i) // 2).shift_mul(tuple(e), ci)
    return out


def ball_basis_poly(alpha) -> PolyN:
    """Exact monomial expansion of phi_alpha (total degree |alpha|)."""
    alpha = _alpha_tuple(alpha)
    n = len(alpha)
    result = PolyN.constant(n, 1.0)
    u = PolyN.constant(n, 1.0)  # 1 - sum_{k<j} x_k^2
    for j in range(n):
        if j < n - 1:
            lam = _ball_lambda(alpha, j)
            c1d = monic_jacobi_poly(alpha[j], JacobiParams(lam - 0.5, lam - 0.5)).coeffs
        else:
            c1d = chebyshev_poly("first", alpha[j]).coeffs
        result = result * _poly_from_even_factor(c1d, n, j, u)
        sq = [0] * n
        sq[j] = 2
        u = u - PolyN.monomial(n, tuple(sq))
    return result


def ball_basis_norm_sq(alpha) -> float:
    """Squared norm of phi_alpha against the ball equilibrium measure.

    Product of the 1D factor norms: the Chebyshev factor contributes pi (or
    pi/2 for positive degree), the j-th Gegenbauer factor its squared norm
    for the weight (1-t^2)^(lam_j - 1/2), the exponent produced by the
    triangular change of variables.
    """
    alpha = _alpha_tuple(alpha)
    n = len(alpha)
    k = alpha[n - 1]
    total = pi if k == 0 else pi / 2.0
    for j in range(n - 1):
        lam = _ball_lambda(alpha, j)
        p = JacobiParams(lam - 0.5, lam - 0.5)
        total *= weighted_norm_sq(monic_jacobi_poly(alpha[j], p), p)
    return float(total)


# ---------------------------------------------------------------------------
# simplex
# ---------------------------------------------------------------------------


def simplex_jacobi_params(alpha) -> list[JacobiParams]:
    """Per-axis Jacobi parameters (a_j, -1/2) of psi_alpha.

    a_j sums the trailing index entries: a_j = 2 sum_{k>j} alpha_k + (n-j-2)/2
    (0-based j).  This is the convention certified by the Gram-diagonality
    tests.
    """
    alpha = _alpha_tuple(alpha)
    n = len(alpha)
    return [
        JacobiParams(2.0 * sum(alpha[j + 1 :]) + (n - j - 2) / 2.0, -0.5)
        for j in range(n)
    ]


def simplex_basis_eval(alpha, x):
    """Value of psi_alpha at x (shape (n,) or (N, n))."""
    alpha = _alpha_tuple(alpha)
    n = len(alpha)
    pts, single = _as_points(x, n)
    _check_simplex_interior(pts)
    params = simplex_jacobi_params(alpha)
    val = np.ones(pts.shape[0])
    rem = np.ones(pts.shape[0])  # 1 - sum_{k<j} x_k
    for j in range(n):
        t = 2.0 * pts[:, j] / rem - 1.0
        val = val * rem ** alpha[j] * monic_jacobi_eval(alpha[j], params[j], t)
        rem = rem - pts[:, j]
    return float(val[0]) if single else val


def simplex_basis_poly(alpha) -> PolyN:
    """Exact monomial expansion of psi_alpha (total degree |alpha|)."""
    alpha = _alpha_tuple(alpha)
    n = len(alpha)
    params = simplex_jacobi_params(alpha)
    result = PolyN.constant(n, 1.0)
    rem = PolyN.constant(n, 1.0)  # 1 - sum_{k<j} x_k
    for j in range(n):
        c1d = monic_jacobi_poly(alpha[j], params[j]).coeffs
        m = len(c1d) - 1
        e = [0] * n
        e[j] = 1
        base = PolyN.monomial(n, tuple(e), 2.0) - rem  # 2 x_j - R_j
        factor = PolyN.zero(n)
        for i, ci in enumerate(c1d):
            if ci == 0.0:
                continue
            factor = factor + (base.pow(i) * rem.pow(m - i)).scale(ci)
        result = result * factor
        rem = rem - PolyN.monomial(n, tuple(e))
    return result


# ---------------------------------------------------------------------------
# norms, bundled basis functions
# ---------------------------------------------------------------------------

_NORM_CACHE: dict = {}


def basis_norm_sq(domain: DomainSpec, alpha) -> float:
    """Squared equilibrium-measure norm of the basis function with index alpha."""
    alpha = _alpha_tuple(alpha)
    key = (domain, alpha)
    if key not in _NORM_CACHE:
        if domain.kind == BALL:
            _NORM_CACHE[key] = ball_basis_norm_sq(alpha)
        elif domain.kind == SIMPLEX:
            from .quadrature import domain_rule

            rule = domain_rule(domain, 2 * sum(alpha))
            vals = simplex_basis_eval(alpha, rule.nodes)
            _NORM_CACHE[key] = float(np.dot(rule.weights, vals * vals))
        else:
            raise ValueError("sphere norms are handled by the harmonic basis directly")
    return _NORM_CACHE[key]


@dataclass(frozen=True)
class BasisFunction:
    """An evaluable basis function with its squared norm and eigenvalue."""

    domain: DomainSpec
    index: MultiIndex
    norm_sq: float
    eigenvalue: float

    def __call__(self, x):
        if self.domain.kind == BALL:
            return ball_basis_eval(self.index, x)
        return simplex_basis_eval(self.index, x)

    def normalized(self, x):
        return self(x) / sqrt(self.norm_sq)


def basis_function(domain: DomainSpec, alpha) -> BasisFunction:
    idx = MultiIndex.of(_alpha_tuple(alpha))
    if len(idx) != domain.n:
        raise ValueError("index length must equal the domain dimension")
    return BasisFunction(
        domain=domain,
        index=idx,
        norm_sq=basis_norm_sq(domain, idx),
        eigenvalue=eigenvalue(domain, idx.degree),
    )


def basis_poly(domain: DomainSpec, alpha) -> PolyN:
    if domain.kind == BALL:
        return ball_basis_poly(alpha)
    if domain.kind == SIMPLEX:
        return simplex_basis_poly(alpha)
    raise ValueError("polynomial expansion is defined for ball and simplex bases")


# ---------------------------------------------------------------------------
# spherical harmonics
# ---------------------------------------------------------------------------


def spherical_harmonic_eval(l: int, m: int, x):
    """Real spherical harmonic Y_l^m on the 2-sphere, at ambient unit vectors.

    Normalised to be orthonormal against the surface measure: m = 0 gives
    the zonal N_l0 P_l(z); positive and negative m carry cos and sin of the
    longitude.
    """
    if abs(m) > l:
        raise ValueError(f"order |m| = {abs(m)} exceeds degree l = {l}")
    pts, single = _as_points(x, 3)
    z = np.clip(pts[:, 2], -1.0, 1.0)
    phi = np.arctan2(pts[:, 1], pts[:, 0])
    ma = abs(m)
    norm = sqrt((2 * l + 1) / (4 * pi) * factorial(l - ma) / factorial(l + ma))
    leg = lpmv(ma, l, z)
    if m == 0:
        val = norm * leg
    elif m > 0:
        val = sqrt(2.0) * norm * leg * np.cos(ma * phi)
    else:
        val = sqrt(2.0) * norm * leg * np.sin(ma * phi)
    return float(val[0]) if single else val


def zonal_harmonic_eval(n: int, l: int, c):
    """Zonal harmonic of degree l on S^{n-1} as a function of cos(angle to the pole).

    Evaluated as the monic Gegenbauer polynomial with lambda = (n-2)/2.
    """
    if n < 2:
        raise ValueError("zonal harmonics require n >= 2")
    lam = (n - 2) / 2.0
    return monic_jacobi_eval(l, JacobiParams(lam - 0.5, lam - 0.5), c)


def sphere_harmonic_basis(n: int, max_degree: int):
    """Labelled harmonic basis up to the given degree, for n in {2, 3}.

    Returns a list of (label, callable-on-ambient-points) pairs.  For n = 2
    the circle harmonics are T_l(x1) and x2 U_{l-1}(x1); for n = 3 the real
    Y_l^m family.
    """
    if n == 2:
        out = [((0, 0), lambda x: np.ones(np.atleast_2d(x).shape[0]))]
        for l in range(1, max_degree + 1):
            out.append(((l, 1), lambda x, l=l: chebyshev_eval("first", l, np.atleast_2d(x)[:, 0])))
            out.append(
                ((l, -1), lambda x, l=l: np.atleast_2d(x)[:, 1] * chebyshev_eval("second", l - 1, np.atleast_2d(x)[:, 0]))
            )
        return out
    if n == 3:
        out = []
        for l in range(max_degree + 1):
            for m in range(-l, l + 1):
                out.append(((l, m), lambda x, l=l, m=m: spherical_harmonic_eval(l, m, x)))
        return out
    raise ValueError("full harmonic bases are implemented for n in {2, 3}")
