"""Jacobi trigonometric polynomial analysis on (0, pi).

The orthonormal system is P_n(theta) = C(a, b, n) P_n^{(a,b)}(cos theta) for
the weight (sin theta/2)^{2a+1} (cos theta/2)^{2b+1}.  The compact Jacobi
operator

    L f = -f'' - [(a - b + (a + b + 1) cos theta) / sin theta] f' + shift^2 f,
    shift = (a + b + 1) / 2,

has these polynomials as eigenfunctions with eigenvalues (n + shift)^2.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import series
from .specfun import (
    DomainError,
    gauss_jacobi_rule,
    jacobi_poly_deriv,
    jacobi_table,
    log_gamma,
    log_norm_constant,
)

__all__ = [
    "CpJacobiParams",
    "CoefficientSequence",
    "ThetaRule",
    "theta_rule",
    "trig_weight",
    "trig_poly",
    "trig_poly_table",
    "coeff",
    "coefficients",
    "synthesize",
    "plancherel_defect",
    "apply_Lcompact_spectral",
    "operator_grid_apply",
    "jacobi_series_in_s",
    "trig_poly_taylor",
]


@dataclass(frozen=True)
class CpJacobiParams:
    alpha: float
    beta: float

    def __post_init__(self):
        if not self.alpha > -1:
            raise DomainError(f"alpha out of range: {self.alpha} (require > -1)")
        if not self.beta > -1:
            raise DomainError(f"beta out of range: {self.beta} (require > -1)")

    @property
    def shift(self) -> float:
        return (self.alpha + self.beta + 1) / 2

    def eigenvalue(self, n):
        """mu_n = (n + shift)^2."""
        return (np.asarray(n, dtype=float) + self.shift) ** 2


@dataclass(frozen=True)
class CoefficientSequence:
    """Coefficients c_0 .. c_N of an expansion in the P_n."""

    values: np.ndarray
    params: CpJacobiParams

    def __post_init__(self):
        vals = np.array(self.values)
        if vals.ndim != 1 or not np.all(np.isfinite(vals)):
            raise ValueError("coefficients must be a finite 1-D sequence")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    @property
    def N(self) -> int:
        return len(self.values) - 1

    def norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.values) ** 2)))


@dataclass(frozen=True)
class ThetaRule:
    """Gauss-Jacobi nodes mapped to theta = arccos x, theta increasing.

    ``base_weights`` integrate against (1-x)^a (1+x)^b dx; use
    :meth:`weights_for` to integrate against w~_{alpha,beta}(theta) d theta
    at the same nodes.
    """

    theta: np.ndarray
    x: np.ndarray
    base_weights: np.ndarray
    a: float
    b: float
    order: int = field(default=0)

    def weights_for(self, alpha, beta):
        # w~_{al,be} d theta = 2^{-(al+be+1)} (1-x)^al (1+x)^be dx
        ratio = (1 - self.x) ** (alpha - self.a) * (1 + self.x) ** (beta - self.b)
        return 2.0 ** (-(alpha + beta + 1)) * self.base_weights * ratio

    def exact_degree(self, alpha, beta):
        """Polynomial degree integrated exactly for weight (alpha, beta)."""
        extra_a, extra_b = alpha - self.a, beta - self.b
        if extra_a < 0 or extra_b < 0 or extra_a != int(extra_a) or extra_b != int(extra_b):
            return -1
        return 2 * self.order - 1 - int(extra_a) - int(extra_b)


def theta_rule(order, alpha, beta) -> ThetaRule:
    rule = gauss_jacobi_rule(order, alpha, beta)
    x = rule.nodes[::-1].copy()
    w = rule.weights[::-1].copy()
    return ThetaRule(theta=np.arccos(x), x=x, base_weights=w, a=rule.alpha,
                     b=rule.beta, order=rule.order)


def trig_weight(theta, params: CpJacobiParams):
    """w~_{alpha,beta}(theta) on the open interval (0, pi)."""
    theta = np.asarray(theta, dtype=float)
    if np.any((theta <= 0) | (theta >= np.pi)):
        raise DomainError("trig_weight: theta must lie in the open interval (0, pi)")
    a, b = params.alpha, params.beta
    return np.sin(theta / 2) ** (2 * a + 1) * np.cos(theta / 2) ** (2 * b + 1)


def _norms(nmax, params):
    n = np.arange(nmax + 1, dtype=float)
    return np.atleast_1d(np.exp(log_norm_constant(n, params.alpha, params.beta)))


def trig_poly_table(nmax, params: CpJacobiParams, theta):
    """Rows P_0 .. P_nmax evaluated at ``theta``."""
    theta = np.asarray(theta, dtype=float)
    tab = jacobi_table(nmax, params.alpha, params.beta, np.cos(theta))
    scale = _norms(nmax, params).reshape((-1,) + (1,) * theta.ndim)
    return scale * tab


def trig_poly(n, params: CpJacobiParams, theta):
    return trig_poly_table(n, params, theta)[n]


def coeff(samples, n, params: CpJacobiParams, rule: ThetaRule | None = None, degree=None):
    """Fourier-Jacobi coefficient of f sampled at the nodes of ``rule``.

    ``rule`` defaults to the Gauss-Jacobi rule of ``params`` with as many
    nodes as samples.  If ``degree`` (the polynomial degree of f in
    cos theta) is given, the rule is checked for exactness.
    """
    samples = np.asarray(samples)
    if rule is None:
        rule = theta_rule(len(samples), params.alpha, params.beta)
    if len(samples) != len(rule.theta):
        raise ValueError(f"got {len(samples)} samples for a {len(rule.theta)}-node rule")
    if degree is not None:
        exact = rule.exact_degree(params.alpha, params.beta)
        if exact < degree + n:
            raise ValueError(
                f"quadrature order {rule.order} too low for degree {degree} and n={n}"
            )
    w = rule.weights_for(params.alpha, params.beta)
    return np.sum(w * samples * trig_poly(n, params, rule.theta))


def coefficients(samples, N, params: CpJacobiParams, rule: ThetaRule | None = None):
    """All coefficients n = 0 .. N as a :class:`CoefficientSequence`."""
    samples = np.asarray(samples)
    if rule is None:
        rule = theta_rule(len(samples), params.alpha, params.beta)
    w = rule.weights_for(params.alpha, params.beta)
    table = trig_poly_table(N, params, rule.theta)
    return CoefficientSequence(table @ (w * samples), params)


def synthesize(c: CoefficientSequence, theta):
    """sum_n c_n P_n(theta)."""
    if c.N < 0:
        return np.zeros_like(np.asarray(theta, dtype=float))
    table = trig_poly_table(c.N, c.params, theta)
    return np.tensordot(c.values, table, axes=(0, 0))


def plancherel_defect(samples, N, params: CpJacobiParams, rule: ThetaRule | None = None):
    """| int |f|^2 w~ - sum_{n<=N} |J f(n)|^2 |."""
    samples = np.asarray(samples)
    if rule is None:
        rule = theta_rule(len(samples), params.alpha, params.beta)
    w = rule.weights_for(params.alpha, params.beta)
    lhs = np.sum(w * np.abs(samples) ** 2)
    rhs = np.sum(np.abs(coefficients(samples, N, params, rule).values) ** 2)
    return float(abs(lhs - rhs))


def apply_Lcompact_spectral(c: CoefficientSequence, m: int) -> CoefficientSequence:
    """Action of L^m on coefficients: c_n -> mu_n^m c_n."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    mu = c.params.eigenvalue(np.arange(c.N + 1))
    return CoefficientSequence(c.values * mu**m, c.params)


def _derivs(c: CoefficientSequence, theta):
    """f, f', f'' of the expansion, differentiated term by term."""
    a, b = c.params.alpha, c.params.beta
    x = np.cos(theta)
    s = np.sin(theta)
    norms = _norms(c.N, c.params)
    f = np.zeros_like(theta)
    d1 = np.zeros_like(theta)
    d2 = np.zeros_like(theta)
    for n, cn in enumerate(c.values):
        if cn == 0:
            continue
        k = cn * norms[n]
        p0 = jacobi_table(n, a, b, x)[n]
        p1 = jacobi_poly_deriv(n, a, b, x, 1)
        p2 = jacobi_poly_deriv(n, a, b, x, 2)
        f = f + k * p0
        d1 = d1 - k * s * p1
        d2 = d2 + k * (s * s * p2 - x * p1)
    return f, d1, d2


def operator_grid_apply(f, params: CpJacobiParams | None = None, theta=None,
                        rule: ThetaRule | None = None, N: int | None = None):
    """Apply the compact Jacobi operator pointwise on a theta grid.

    ``f`` is either a :class:`CoefficientSequence` (evaluated at ``theta``)
    or samples at the nodes of ``rule`` together with the truncation ``N``;
    samples are first expanded, then differentiated exactly term by term.
    """
    if not isinstance(f, CoefficientSequence):
        if params is None or N is None:
            raise ValueError("samples need params and a truncation N")
        rule = rule or theta_rule(len(f), params.alpha, params.beta)
        f = coefficients(f, N, params, rule)
        if theta is None:
            theta = rule.theta
    if theta is None:
        raise ValueError("theta grid required")
    theta = np.asarray(theta, dtype=float)
    a, b = f.params.alpha, f.params.beta
    val, d1, d2 = _derivs(f, theta)
    first = (a - b + (a + b + 1) * np.cos(theta)) / np.sin(theta)
    return -d2 - first * d1 + f.params.shift**2 * val


def jacobi_series_in_s(nvals, alpha, beta, kmax):
    """Coefficients A[n, k] with P_n^{(a,b)}(x) = sum_k A[n,k] s^k, s = (1-x)/2.

    Only k <= kmax are returned.  Rows follow ``nvals``.
    """
    nvals = np.asarray(nvals, dtype=float)
    a, b = float(alpha), float(beta)
    out = np.zeros((len(nvals), kmax + 1))
    lead = np.exp(log_gamma(nvals + a + 1).real - log_gamma(a + 1.0).real
                  - log_gamma(nvals + 1).real)
    out[:, 0] = lead
    for k in range(kmax):
        out[:, k + 1] = out[:, k] * (-nvals + k) * (nvals + a + b + 1 + k) / ((a + 1 + k) * (k + 1))
    return out


def trig_poly_taylor(c: CoefficientSequence, order: int):
    """Taylor coefficients at theta = 0 of sum_n c_n P_n(theta), up to ``order``."""
    s = series.power(series.sin_series(order, 0.5), 2)
    s_pows = series.powers(s, order // 2)
    A = jacobi_series_in_s(np.arange(c.N + 1), c.params.alpha, c.params.beta, order // 2)
    weighted = (c.values * _norms(c.N, c.params)) @ A
    return weighted @ s_pows
