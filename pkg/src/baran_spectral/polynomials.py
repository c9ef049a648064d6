"""Dense-dictionary multivariate polynomials with exact coefficient arithmetic.

Coefficients are stored as a map from exponent tuples to floats, e.g. for
n = 2 the polynomial 1 + 3 x0 x1^2 is ``{(0, 0): 1.0, (1, 2): 3.0}``.
Coefficients whose magnitude falls to the cancellation floor (1e-14) are
dropped so that operator identities that hold exactly produce genuinely
empty residuals.
"""

from __future__ import annotations

import numpy as np

#: coefficients at or below this magnitude are treated as cancellation residue
COEFF_TOL = 1e-14


class PolyN:
    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs=None, trim: bool = True):
        self.n = int(n)
        cc = {}
        if coeffs:
            for e, c in coeffs.items():
                if len(e) != self.n:
                    raise ValueError(f"exponent {e} does not have {self.n} entries")
                c = float(c)
                if trim and abs(c) <= COEFF_TOL:
                    continue
                if c != 0.0:
                    cc[tuple(int(v) for v in e)] = c
        self.coeffs = cc

    # -- constructors -----------------------------------------------------

    @staticmethod
    def zero(n: int) -> "PolyN":
        return PolyN(n)

    @staticmethod
    def constant(n: int, c: float) -> "PolyN":
        return PolyN(n, {(0,) * n: c})

    @staticmethod
    def monomial(n: int, exponents, c: float = 1.0) -> "PolyN":
        return PolyN(n, {tuple(exponents): c})

    @staticmethod
    def coordinate(n: int, i: int) -> "PolyN":
        e = [0] * n
        e[i] = 1
        return PolyN(n, {tuple(e): 1.0})

    # -- queries -----------------------------------------------------------

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.coeffs:
            return -1
        return max(sum(e) for e in self.coeffs)

    def is_zero(self, tol: float = COEFF_TOL) -> bool:
        return all(abs(c) <= tol for c in self.coeffs.values())

    def max_abs_coeff(self) -> float:
        return max((abs(c) for c in self.coeffs.values()), default=0.0)

    def __eq__(self, other):
        return isinstance(other, PolyN) and self.n == other.n and self.coeffs == other.coeffs

    def __repr__(self):
        terms = sorted(self.coeffs.items(), key=lambda ec: (sum(ec[0]), ec[0]))
        body = " + ".join(f"{c:g}*x^{e}" for e, c in terms) or "0"
        return f"PolyN(n={self.n}: {body})"

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: "PolyN"):
        if self.n != other.n:
            raise ValueError(f"dimension mismatch: {self.n} vs {other.n}")

    def __add__(self, other: "PolyN") -> "PolyN":
        self._check(other)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0.0) + c
        return PolyN(self.n, out)

    def __sub__(self, other: "PolyN") -> "PolyN":
        return self + other.scale(-1.0)

    def scale(self, s: float) -> "PolyN":
        return PolyN(self.n, {e: s * c for e, c in self.coeffs.items()})

    def __mul__(self, other: "PolyN") -> "PolyN":
        self._check(other)
        out = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0.0) + c1 * c2
        return PolyN(self.n, out)

    def pow(self, k: int) -> "PolyN":
        if k < 0:
            raise ValueError("negative power")
        out = PolyN.constant(self.n, 1.0)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def partial(self, i: int) -> "PolyN":
        """Exact partial derivative with respect to coordinate i."""
        out = {}
        for e, c in self.coeffs.items():
            if e[i] == 0:
                continue
            d = list(e)
            d[i] -= 1
            out[tuple(d)] = c * e[i]
        return PolyN(self.n, out, trim=False)

    def gradient(self):
        return [self.partial(i) for i in range(self.n)]

    def shift_mul(self, exponents, c: float = 1.0) -> "PolyN":
        """Multiply by c * x^exponents (exponent shift, no cross terms)."""
        out = {}
        for e, v in self.coeffs.items():
            out[tuple(a + b for a, b in zip(e, exponents))] = c * v
        return PolyN(self.n, out)

    # -- evaluation ----------------------------------------------------------

    def __call__(self, x):
        """Evaluate at x of shape (n,) or (N, n); returns scalar or (N,) array."""
        x = np.asarray(x, dtype=float)
        single = x.ndim == 1
        pts = x[None, :] if single else x
        if pts.shape[1] != self.n:
            raise ValueError(f"points must have {self.n} coordinates")
        if not self.coeffs:
            out = np.zeros(pts.shape[0])
            return float(out[0]) if single else out
        maxdeg = [0] * self.n
        for e in self.coeffs:
            for i, v in enumerate(e):
                maxdeg[i] = max(maxdeg[i], v)
        # per-axis power tables keep grid evaluation cheap
        powers = [pts[:, i][:, None] ** np.arange(maxdeg[i] + 1) for i in range(self.n)]
        out = np.zeros(pts.shape[0])
        for e, c in self.coeffs.items():
            term = np.full(pts.shape[0], c)
            for i, v in enumerate(e):
                if v:
                    term = term * powers[i][:, v]
            out += term
        return float(out[0]) if single else out


def random_polynomial(n: int, max_degree: int, rng: np.random.Generator, scale: float = 1.0) -> PolyN:
    """Polynomial with independent normal coefficients on all |e| <= max_degree."""
    coeffs = {}
    for e in _exponents_up_to(n, max_degree):
        coeffs[e] = scale * rng.normal()
    return PolyN(n, coeffs)


def _exponents_up_to(n: int, d: int):
    if n == 0:
        yield ()
        return
    for head in range(d + 1):
        for tail in _exponents_up_to(n - 1, d - head):
            yield (head,) + tail
