"""Scalar special-function kernels.

Complex log-Gamma, Pochhammer symbols, Jacobi and Gegenbauer polynomials,
the Jacobi normalisation constant and Gauss-Jacobi quadrature.  Everything
here is a pure function of its arguments and accepts numpy arrays where it
makes sense.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "DomainError",
    "OrthoPolyIndex",
    "QuadratureRule",
    "log_gamma",
    "gamma_ratio",
    "pochhammer",
    "jacobi_poly",
    "jacobi_table",
    "jacobi_poly_deriv",
    "gegenbauer",
    "gegenbauer_jacobi_factor",
    "norm_constant",
    "log_norm_constant",
    "gauss_jacobi_rule",
]


class DomainError(ValueError):
    """Argument outside the mathematical domain of a function."""


# Lanczos approximation, g = 7, n = 9.
_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_HALF_LOG_2PI = 0.5 * np.log(2.0 * np.pi)


@dataclass(frozen=True)
class OrthoPolyIndex:
    """Degree and type of a Jacobi polynomial."""

    n: int
    alpha: float
    beta: float

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 0:
            raise DomainError(f"degree must be a nonnegative integer, got {self.n}")
        if not self.alpha > -1:
            raise DomainError(f"alpha out of range: {self.alpha} (require > -1)")
        if not self.beta > -1:
            raise DomainError(f"beta out of range: {self.beta} (require > -1)")
        object.__setattr__(self, "n", int(self.n))


@dataclass(frozen=True)
class QuadratureRule:
    """Gauss rule for the weight (1-x)^alpha (1+x)^beta on (-1, 1)."""

    nodes: np.ndarray
    weights: np.ndarray
    order: int
    alpha: float
    beta: float

    def __post_init__(self):
        for arr in (self.nodes, self.weights):
            arr.setflags(write=False)

    def integrate(self, values):
        """Apply the rule along the first axis of ``values``."""
        return np.tensordot(self.weights, np.asarray(values), axes=(0, 0))


def _lanczos_log_gamma(z):
    # valid for Re z >= 1/2
    z = z - 1.0
    x = np.full_like(z, _LANCZOS_COEF[0])
    for i in range(1, len(_LANCZOS_COEF)):
        x = x + _LANCZOS_COEF[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    return _HALF_LOG_2PI + (z + 0.5) * np.log(t) - t + np.log(x)


def log_gamma(z):
    """Principal branch of log Gamma(z) for complex ``z``.

    The branch is the analytic continuation of the real log-Gamma with a
    cut along the negative real axis, so that
    ``log_gamma(z + 1) == log_gamma(z) + log(z)``.  Arguments with real
    part below 1/2 are shifted upward by that recurrence before the Lanczos
    sum is applied.

    Raises DomainError at the poles z = 0, -1, -2, ...
    """
    scalar = np.ndim(z) == 0
    z = np.atleast_1d(np.asarray(z, dtype=complex)).copy()
    poles = (z.imag == 0) & (z.real <= 0) & (z.real == np.round(z.real))
    if poles.any():
        raise DomainError(f"log_gamma: pole of Gamma at z = {z[poles][0].real:g}")

    correction = np.zeros_like(z)
    low = z.real < 0.5
    while low.any():
        correction[low] += np.log(z[low])
        z[low] += 1.0
        low = z.real < 0.5
    out = _lanczos_log_gamma(z) - correction
    return out[0] if scalar else out


def gamma_ratio(num, den):
    """exp(sum log_gamma(num) - sum log_gamma(den)), computed in log space."""
    total = sum(log_gamma(a) for a in num) - sum(log_gamma(b) for b in den)
    return np.exp(total)


def pochhammer(z, m):
    """Rising factorial (z)_m = z (z+1) ... (z+m-1); (z)_0 = 1."""
    if int(m) != m or m < 0:
        raise DomainError(f"pochhammer length must be a nonnegative integer, got {m}")
    z = np.asarray(z)
    out = np.ones_like(z, dtype=np.result_type(z, float))
    for j in range(int(m)):
        out = out * (z + j)
    return out[()] if out.ndim == 0 else out


def jacobi_table(nmax, alpha, beta, x):
    """Values P_0 .. P_nmax of type (alpha, beta) at ``x``.

    Returns an array of shape ``(nmax + 1,) + shape(x)``.  Uses the forward
    three-term recurrence.
    """
    x = np.asarray(x, dtype=float)
    out = np.empty((nmax + 1,) + x.shape)
    out[0] = 1.0
    if nmax == 0:
        return out
    a, b = float(alpha), float(beta)
    out[1] = (a + 1.0) + (a + b + 2.0) * (x - 1.0) / 2.0
    ab2 = a * a - b * b
    for n in range(2, nmax + 1):
        s = 2 * n + a + b
        c1 = 2 * n * (n + a + b) * (s - 2)
        c2 = (s - 1) * (s * (s - 2) * x + ab2)
        c3 = 2 * (n + a - 1) * (n + b - 1) * s
        out[n] = (c2 * out[n - 1] - c3 * out[n - 2]) / c1
    return out


def jacobi_poly(idx: OrthoPolyIndex, x):
    """P_n^{(alpha, beta)}(x) by the three-term recurrence."""
    vals = jacobi_table(idx.n, idx.alpha, idx.beta, x)[idx.n]
    return vals[()] if vals.ndim == 0 else vals


def jacobi_poly_deriv(n, alpha, beta, x, k=1):
    """k-th x-derivative of P_n^{(alpha, beta)}.

    d/dx P_n^{(a,b)} = (n + a + b + 1)/2 * P_{n-1}^{(a+1, b+1)}, applied k times.
    """
    x = np.asarray(x, dtype=float)
    if k > n:
        return np.zeros_like(x)
    scale = 1.0
    for i in range(k):
        scale *= (n + alpha + beta + 1 + i) / 2.0
    return scale * jacobi_table(n - k, alpha + k, beta + k, x)[n - k]


def _check_gegenbauer_lam(lam):
    if not lam > -0.5:
        raise DomainError(f"gegenbauer: lam = {lam} outside (-1/2, inf)")
    if lam == 0:
        raise DomainError("gegenbauer: lam = 0 excluded (Gamma(2 lam) pole)")


def gegenbauer(k, lam, t):
    """Gegenbauer polynomial C_k^lam(t) by its own three-term recurrence."""
    _check_gegenbauer_lam(lam)
    t = np.asarray(t, dtype=float)
    prev = np.ones_like(t)
    if k == 0:
        return prev[()] if prev.ndim == 0 else prev
    cur = 2.0 * lam * t
    for n in range(2, k + 1):
        prev, cur = cur, (2.0 * t * (n + lam - 1) * cur - (n + 2 * lam - 2) * prev) / n
    return cur[()] if cur.ndim == 0 else cur


def gegenbauer_jacobi_factor(k, lam):
    """Constant c with C_k^lam = c * P_k^{(lam-1/2, lam-1/2)}."""
    _check_gegenbauer_lam(lam)
    return float(
        gamma_ratio([lam + 0.5, k + 2 * lam], [2 * lam, k + lam + 0.5]).real
    )


def log_norm_constant(n, alpha, beta):
    """log C(alpha, beta, n), the Jacobi-trigonometric normalisation."""
    a, b = float(alpha), float(beta)
    n = np.asarray(n, dtype=float)
    # (2n+a+b+1) Gamma(n+a+b+1) == (2n+a+b+1)/(n+a+b+1) * Gamma(n+a+b+2): no pole at n=0
    den = n + a + b + 1
    ratio = np.where(den == 0, 1.0, (2 * n + a + b + 1) / np.where(den == 0, 1.0, den))
    log_sq = (
        np.log(ratio)
        + log_gamma(n + 1.0).real
        + log_gamma(n + a + b + 2).real
        - log_gamma(n + a + 1).real
        - log_gamma(n + b + 1).real
    )
    return 0.5 * log_sq


def norm_constant(idx: OrthoPolyIndex) -> float:
    """C(alpha, beta, n) > 0 making C * P_n(cos theta) orthonormal."""
    return float(np.exp(log_norm_constant(idx.n, idx.alpha, idx.beta)))


def gauss_jacobi_rule(order: int, alpha: float, beta: float) -> QuadratureRule:
    """Gauss-Jacobi nodes and weights via the Golub-Welsch eigenproblem.

    The rule integrates polynomials of degree <= 2*order - 1 exactly against
    (1-x)^alpha (1+x)^beta dx on (-1, 1).
    """
    if int(order) != order or order < 1:
        raise DomainError(f"quadrature order must be a positive integer, got {order}")
    a, b = float(alpha), float(beta)
    if not (a > -1 and b > -1):
        raise DomainError(f"Jacobi exponents must exceed -1, got ({a}, {b})")
    order = int(order)

    n = np.arange(order, dtype=float)
    s = 2 * n + a + b
    diag = np.empty(order)
    diag[0] = (b - a) / (a + b + 2)
    if order > 1:
        diag[1:] = (b * b - a * a) / (s[1:] * (s[1:] + 2))

    k = np.arange(1, order, dtype=float)
    sk = 2 * k + a + b
    offsq = np.empty(order - 1)
    if order > 1:
        offsq[0] = 4 * (1 + a) * (1 + b) / ((2 + a + b) ** 2 * (3 + a + b))
        kk, ss = k[1:], sk[1:]
        offsq[1:] = (
            4 * kk * (kk + a) * (kk + b) * (kk + a + b) / (ss**2 * (ss + 1) * (ss - 1))
        )

    mu0 = np.exp((a + b + 1) * np.log(2.0) + log_gamma(a + 1).real
                 + log_gamma(b + 1).real - log_gamma(a + b + 2).real)
    jac = np.diag(diag) + np.diag(np.sqrt(offsq), 1) + np.diag(np.sqrt(offsq), -1)
    nodes, vecs = np.linalg.eigh(jac)
    weights = mu0 * vecs[0] ** 2
    return QuadratureRule(nodes=nodes, weights=weights, order=order, alpha=a, beta=b)
