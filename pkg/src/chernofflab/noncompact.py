"""Jacobi analysis on the half-line (rank-one noncompact symmetric spaces).

Jacobi functions phi_lam^{(a,b)} solve

    phi'' + ((2a+1) coth r + (2b+1) tanh r) phi' + (lam^2 + rho^2) phi = 0,
    phi(0) = 1, phi'(0) = 0,            rho = a + b + 1,

and the Fourier-Jacobi transform pairs L^2(w_{a,b} dr) with
L^2(|c(lam)|^{-2} d lam / 2 pi).  All spectral multipliers use rho = a+b+1.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import solve_ivp

from . import series
from .specfun import DomainError, log_gamma, pochhammer

__all__ = [
    "NcJacobiParams",
    "KTypeIndex",
    "RadialFunction",
    "SpectralDensity",
    "Step2Result",
    "panel_gauss_legendre",
    "jacobi_function",
    "jacobi_function_table",
    "weight_w",
    "c_function",
    "c_inv_sq",
    "forward_transform",
    "inverse_transform",
    "plancherel_defect",
    "apply_L_spectral",
    "radial_operator_fd",
    "kostant_Q",
    "kostant_modulus",
    "spherical_fn_delta",
    "c_ratio_stat",
    "c_ratio_sup",
    "step2_constant",
    "step2_inequality_check",
    "jacobi_function_taylor",
    "radial_taylor",
]

FROBENIUS_R0 = 0.1
ODE_RTOL = 3e-14
ODE_ATOL = 1e-17


@dataclass(frozen=True)
class NcJacobiParams:
    """Jacobi type (alpha, beta) in the regime alpha > -1, |beta| <= alpha + 1.

    Build from root multiplicities with :meth:`from_multiplicities`.
    """

    alpha: float
    beta: float
    m_gamma: float | None = None
    m_2gamma: float | None = None

    def __post_init__(self):
        if not self.alpha > -1:
            raise DomainError(f"alpha out of range: {self.alpha} (require > -1)")
        if not abs(self.beta) <= self.alpha + 1:
            raise DomainError(
                f"beta out of range: |{self.beta}| > alpha + 1 = {self.alpha + 1}"
            )

    @classmethod
    def from_multiplicities(cls, m_gamma, m_2gamma):
        if m_gamma < 0 or m_2gamma < 0:
            raise DomainError("root multiplicities must be nonnegative")
        alpha = (m_gamma + m_2gamma - 1) / 2
        beta = (m_2gamma - 1) / 2
        return cls(alpha, beta, m_gamma, m_2gamma)

    @property
    def varrho(self) -> float:
        return self.alpha + self.beta + 1

    @property
    def rho_half_sum(self) -> float | None:
        """(m_gamma + m_2gamma)/2 when built from root multiplicities."""
        if self.m_gamma is None:
            return None
        return (self.m_gamma + self.m_2gamma) / 2

    def shifted(self, p, q) -> "NcJacobiParams":
        return NcJacobiParams(self.alpha + p, self.beta + q)


@dataclass(frozen=True)
class KTypeIndex:
    """K-type (p, q): (p+q)/2 and (p-q)/2 must be nonnegative integers."""

    p: int
    q: int

    def __post_init__(self):
        s, d = self.p + self.q, self.p - self.q
        if s < 0 or d < 0 or s % 2 or d % 2:
            raise DomainError(f"invalid K-type (p, q) = ({self.p}, {self.q})")

    @property
    def plus(self) -> int:
        return (self.p + self.q) // 2

    @property
    def minus(self) -> int:
        return (self.p - self.q) // 2


def _freeze(arr, dtype=None):
    arr = np.array(arr, dtype=dtype)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class RadialFunction:
    """Samples of an even function on (0, R] with optional quadrature weights."""

    grid: np.ndarray
    values: np.ndarray
    params: NcJacobiParams
    weights: np.ndarray | None = field(default=None)

    def __post_init__(self):
        grid = _freeze(self.grid, float)
        values = _freeze(self.values)
        if grid.ndim != 1 or len(grid) == 0:
            raise ValueError("radial grid must be a nonempty 1-D array")
        if np.any(np.diff(grid) <= 0) or grid[0] < 0:
            raise ValueError("radial grid must be strictly increasing and nonnegative")
        if values.shape != grid.shape or not np.all(np.isfinite(values)):
            raise ValueError("values must be finite and match the grid")
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "values", values)
        if self.weights is not None:
            object.__setattr__(self, "weights", _freeze(self.weights, float))

    @classmethod
    def from_callable(cls, fn, params, R, n_panels=40, order=16):
        grid, weights = panel_gauss_legendre(0.0, R, n_panels, order)
        return cls(grid, fn(grid), params, weights)

    def quadrature_weights(self):
        if self.weights is not None:
            return self.weights
        return _trapezoid_weights(self.grid)

    def norm_sq(self) -> float:
        w = self.quadrature_weights() * weight_w(self.grid, self.params)
        return float(np.sum(w * np.abs(self.values) ** 2))


@dataclass(frozen=True)
class SpectralDensity:
    """Transform values on a lambda grid in [0, Lambda] with quadrature weights."""

    lam_grid: np.ndarray
    values: np.ndarray
    params: NcJacobiParams
    weights: np.ndarray | None = field(default=None)

    def __post_init__(self):
        lam = _freeze(self.lam_grid, float)
        values = _freeze(self.values)
        if lam.ndim != 1 or len(lam) == 0:
            raise ValueError("lambda grid must be a nonempty 1-D array")
        if np.any(np.diff(lam) <= 0) or lam[0] < 0:
            raise ValueError("lambda grid must be strictly increasing in [0, Lambda]")
        if values.shape != lam.shape or not np.all(np.isfinite(values)):
            raise ValueError("values must be finite and match the grid")
        object.__setattr__(self, "lam_grid", lam)
        object.__setattr__(self, "values", values)
        if self.weights is not None:
            object.__setattr__(self, "weights", _freeze(self.weights, float))

    @property
    def band_limit(self) -> float:
        return float(self.lam_grid[-1])

    def quadrature_weights(self):
        if self.weights is not None:
            return self.weights
        return _trapezoid_weights(self.lam_grid)

    def measure(self, params: NcJacobiParams | None = None):
        """Quadrature weights times the Plancherel density |c|^{-2} / (2 pi)."""
        params = params or self.params
        return self.quadrature_weights() * c_inv_sq(self.lam_grid, params) / (2 * np.pi)

    def norm_sq(self) -> float:
        return float(np.sum(self.measure() * np.abs(self.values) ** 2))


@dataclass(frozen=True)
class Step2Result:
    lhs: float
    rhs: float
    ratio: float
    c1: float


def _trapezoid_weights(x):
    x = np.asarray(x, dtype=float)
    w = np.zeros_like(x)
    if len(x) > 1:
        dx = np.diff(x)
        w[:-1] += dx / 2
        w[1:] += dx / 2
    return w


def panel_gauss_legendre(a, b, n_panels, order):
    """Composite Gauss-Legendre nodes and weights on [a, b]."""
    x, w = np.polynomial.legendre.leggauss(order)
    edges = np.linspace(a, b, n_panels + 1)
    half = np.diff(edges)[:, None] / 2
    mid = (edges[:-1] + edges[1:])[:, None] / 2
    return (mid + half * x).ravel(), (half * w).ravel()


# ---------------------------------------------------------------- Jacobi functions

def _series(lam, params, r, tol=1e-17, max_terms=400):
    """phi, phi' from the hypergeometric power series in z = -sinh^2 r."""
    lam = np.asarray(lam, dtype=float)[:, None]
    r = np.atleast_1d(np.asarray(r, dtype=float))[None, :]
    a = params.alpha
    half_rho = params.varrho / 2
    z = -np.sinh(r) ** 2
    dz = -2 * np.sinh(r) * np.cosh(r)
    shape = np.broadcast_shapes(lam.shape, r.shape)
    term = np.ones(shape)     # c_k z^k
    phi = np.ones(shape)
    dphi = np.zeros(shape)
    for k in range(max_terms):
        # c_{k+1} / c_k = ((rho/2 + k)^2 + lam^2/4) / ((k+1)(a+1+k))
        lower = term * ((half_rho + k) ** 2 + lam**2 / 4) / ((k + 1) * (a + 1 + k))
        term = lower * z
        dterm = (k + 1) * lower * dz      # d/dr (c_{k+1} z^{k+1})
        phi = phi + term
        dphi = dphi + dterm
        if k >= 12 and np.all(np.abs(term) <= tol * np.abs(phi)) and np.all(
            np.abs(dterm) <= tol * (np.abs(dphi) + 1e-300)
        ):
            break
    return phi, dphi


def jacobi_function_table(lams, params: NcJacobiParams, r, return_derivative=False):
    """phi_lam(r) for every lam in ``lams`` and r in ``r``; shape (len(lams), len(r)).

    Power series on [0, r0], then the ODE for u = e^{rho r} phi integrated
    with an adaptive Runge-Kutta method (all lambdas at once).
    """
    lams = np.abs(np.atleast_1d(np.asarray(lams, dtype=float)))
    r = np.atleast_1d(np.asarray(r, dtype=float))
    if np.any(r < 0):
        raise DomainError("jacobi_function: r must be nonnegative")
    nl = len(lams)
    phi = np.empty((nl, len(r)))
    dphi = np.empty((nl, len(r)))

    near = r <= FROBENIUS_R0
    if near.any():
        p, d = _series(lams, params, r[near])
        phi[:, near] = p
        dphi[:, near] = d
    far = ~near
    if far.any():
        rho = params.varrho
        a2, b2 = 2 * params.alpha + 1, 2 * params.beta + 1
        r0 = FROBENIUS_R0
        p0, d0 = _series(lams, params, np.array([r0]))
        # u = e^{rho r} phi
        u0 = np.exp(rho * r0) * p0[:, 0]
        du0 = np.exp(rho * r0) * (d0[:, 0] + rho * p0[:, 0])
        lam2 = lams**2

        def rhs(t, y):
            u, du = y[:nl], y[nl:]
            coef = a2 / np.tanh(t) + b2 * np.tanh(t)
            ddu = -(coef - 2 * rho) * du - (lam2 + 2 * rho**2 - rho * coef) * u
            return np.concatenate([du, ddu])

        order = np.argsort(r[far])
        r_far = r[far][order]
        sol = solve_ivp(rhs, (r0, r_far[-1]), np.concatenate([u0, du0]),
                        method="DOP853", t_eval=r_far, rtol=ODE_RTOL, atol=ODE_ATOL)
        if not sol.success:
            raise RuntimeError(f"Jacobi ODE integration failed: {sol.message}")
        scale = np.exp(-rho * r_far)
        u, du = sol.y[:nl], sol.y[nl:]
        idx = np.flatnonzero(far)[order]
        phi[:, idx] = u * scale
        dphi[:, idx] = (du - rho * u) * scale
    if return_derivative:
        return phi, dphi
    return phi


def jacobi_function(lam, params: NcJacobiParams, r):
    """phi_lam^{(alpha,beta)}(r); depends on lam only through lam^2."""
    scalar = np.ndim(r) == 0
    out = jacobi_function_table([abs(float(lam))], params, np.atleast_1d(r))[0]
    return float(out[0]) if scalar else out


def weight_w(r, params: NcJacobiParams):
    """w_{a,b}(r) = (2 sinh r)^{2a+1} (2 cosh r)^{2b+1}."""
    r = np.asarray(r, dtype=float)
    return (2 * np.sinh(r)) ** (2 * params.alpha + 1) * (2 * np.cosh(r)) ** (2 * params.beta + 1)


def _log_c(lam, params):
    lam = np.asarray(lam, dtype=float)
    if np.any(lam == 0):
        raise DomainError("c_function: lambda = 0 is a pole of Gamma(i lambda)")
    a, b, rho = params.alpha, params.beta, params.varrho
    il = 1j * lam
    return ((rho - il) * np.log(2.0) + log_gamma(a + 1.0) + log_gamma(il)
            - log_gamma((il + rho) / 2) - log_gamma((il + a - b + 1) / 2))


def c_function(lam, params: NcJacobiParams):
    """Harish-Chandra c-function c_{a,b}(lam) for lam > 0."""
    return np.exp(_log_c(lam, params))


def c_inv_sq(lam, params: NcJacobiParams):
    """|c_{a,b}(lam)|^{-2}; the removable behaviour at lam = 0 is handled."""
    lam = np.asarray(lam, dtype=float)
    out = np.empty_like(lam)
    zero = lam == 0
    out[~zero] = np.exp(-2 * _log_c(lam[~zero], params).real)
    if zero.any():
        # |c|^{-2} ~ lam^2 near 0 except at the (-1/2, -1/2)-type cancellation
        tiny = 1e-8
        val = np.exp(-2 * _log_c(np.array([tiny]), params).real)[0]
        out[zero] = val if val > 1e-10 else 0.0
    return out


# ----------------------------------------------------------------- transforms

def forward_transform(f: RadialFunction, lam_grid, lam_weights=None) -> SpectralDensity:
    """J f(lam) = int f phi_lam w dr by the quadrature attached to ``f``."""
    lam_grid = np.asarray(lam_grid, dtype=float)
    if lam_grid.size == 0:
        raise ValueError("forward_transform: empty lambda grid")
    w = f.quadrature_weights() * weight_w(f.grid, f.params)
    if np.all(f.values == 0):
        vals = np.zeros(len(lam_grid), dtype=f.values.dtype)
    else:
        table = jacobi_function_table(lam_grid, f.params, f.grid)
        vals = table @ (w * f.values)
    return SpectralDensity(lam_grid, vals, f.params, lam_weights)


def inverse_transform(g: SpectralDensity, r_grid, r_weights=None) -> RadialFunction:
    """f(r) = (1/2 pi) int_0^Lambda g phi_lam(r) |c|^{-2} d lam."""
    r_grid = np.asarray(r_grid, dtype=float)
    if r_grid.size == 0:
        raise ValueError("inverse_transform: empty radial grid")
    mu = g.measure()
    if np.all(g.values == 0):
        vals = np.zeros(len(r_grid), dtype=g.values.dtype)
    else:
        table = jacobi_function_table(g.lam_grid, g.params, r_grid)
        vals = (mu * g.values) @ table
    return RadialFunction(r_grid, vals, g.params, r_weights)


def plancherel_defect(f: RadialFunction, tol=1e-12, panel_width=2.0, order=16,
                      lam_max=400.0, return_parts=False):
    """| int |f|^2 w dr - (1/2 pi) int |J f|^2 |c|^{-2} d lam |.

    The lambda integral is extended panel by panel until a panel contributes
    less than ``tol`` times the running total.
    """
    lhs = f.norm_sq()
    if lhs == 0:
        return (0.0, 0.0, 0.0) if return_parts else 0.0
    total = 0.0
    lo = 0.0
    while lo < lam_max:
        lam, wl = panel_gauss_legendre(lo, lo + panel_width, 1, order)
        spec = forward_transform(f, lam, wl)
        part = spec.norm_sq()
        total += part
        lo += panel_width
        if part < tol * total:
            break
    defect = abs(lhs - total)
    return (defect, lhs, total) if return_parts else defect


def apply_L_spectral(g: SpectralDensity, m: int) -> SpectralDensity:
    """Spectral action of (-L)^m: multiply by (lam^2 + rho^2)^m."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    mult = (g.lam_grid**2 + g.params.varrho**2) ** m
    return SpectralDensity(g.lam_grid, g.values * mult, g.params, g.weights)


def radial_operator_fd(values, h, r, params: NcJacobiParams):
    """Jacobi operator L f on a uniform grid by 4th-order central differences.

    Returns L f at the interior points r[2:-2].
    """
    v = np.asarray(values)
    d1 = (v[:-4] - 8 * v[1:-3] + 8 * v[3:-1] - v[4:]) / (12 * h)
    d2 = (-v[:-4] + 16 * v[1:-3] - 30 * v[2:-2] + 16 * v[3:-1] - v[4:]) / (12 * h * h)
    rr = np.asarray(r)[2:-2]
    coef = (2 * params.alpha + 1) / np.tanh(rr) + (2 * params.beta + 1) * np.tanh(rr)
    return d2 + coef * d1


# ------------------------------------------------ K-types and the c-ratio

def kostant_Q(delta: KTypeIndex, lam, params: NcJacobiParams):
    """Q_delta(i lam + rho) as a product of two Pochhammer symbols."""
    lam = np.asarray(lam, dtype=float)
    a, b = params.alpha, params.beta
    return (pochhammer((a + b + 1 + 1j * lam) / 2, delta.plus)
            * pochhammer((a - b + 1 + 1j * lam) / 2, delta.minus))


def kostant_modulus(delta: KTypeIndex, lam, params: NcJacobiParams):
    """|Q_delta(i lam + rho)| from the factorwise modulus product."""
    lam = np.asarray(lam, dtype=float)
    b1 = (params.alpha + params.beta + 1) / 2
    b2 = (params.alpha - params.beta + 1) / 2
    out = np.ones_like(lam)
    for j in range(delta.plus):
        out = out * np.sqrt((b1 + j) ** 2 + lam**2 / 4)
    for j in range(delta.minus):
        out = out * np.sqrt((b2 + j) ** 2 + lam**2 / 4)
    return out


def spherical_fn_delta(lam, delta: KTypeIndex, params: NcJacobiParams, r):
    """Phi_{lam,delta}(a_r) = Q (a+1)_p^{-1} sinh^p r cosh^q r phi^{(a+p, b+q)}(r)."""
    r = np.asarray(r, dtype=float)
    shifted = params.shifted(delta.p, delta.q)
    phi = jacobi_function_table([lam], shifted, np.atleast_1d(r))[0].reshape(r.shape)
    pref = kostant_Q(delta, lam, params) / pochhammer(params.alpha + 1, delta.p)
    return pref * np.sinh(r) ** delta.p * np.cosh(r) ** delta.q * phi


def c_ratio_stat(lam, params: NcJacobiParams, delta: KTypeIndex, normalized=False):
    """|c_{a,b}|^2 / |c_{a+p,b+q}|^2 * |Q_delta(i lam + rho)|^{-2}.

    With ``normalized=True`` the result is multiplied by
    4^{p+q} ((a+1)_p)^2, the reciprocal of its (constant) value.
    """
    lam = np.asarray(lam, dtype=float)
    if np.any(lam <= 0):
        raise DomainError("c_ratio_stat: lambda must be positive")
    shifted = params.shifted(delta.p, delta.q)
    log_r = 2 * (_log_c(lam, params).real - _log_c(lam, shifted).real)
    out = np.exp(log_r) / kostant_modulus(delta, lam, params) ** 2
    if normalized:
        out = out * 4.0 ** (delta.p + delta.q) * pochhammer(params.alpha + 1, delta.p) ** 2
    return out


def c_ratio_sup(params: NcJacobiParams, delta: KTypeIndex, lam=None):
    """Grid maximum of :func:`c_ratio_stat` (log grid on [0.01, 1e3] by default)."""
    if lam is None:
        lam = np.logspace(-2, 3, 200)
    return float(np.max(c_ratio_stat(lam, params, delta)))


def step2_constant(params: NcJacobiParams, delta: KTypeIndex, lam=None):
    """C_1 = ((rho_delta / rho)^2) * max(1, sup R)."""
    rho = params.varrho
    rho_delta = rho + delta.p + delta.q
    c_ab = (rho_delta / rho) ** 2
    grid = np.logspace(-2, 3, 200)
    if lam is not None:
        lam = np.asarray(lam, dtype=float)
        grid = np.concatenate([grid, lam[lam > 0]])
    return c_ab * max(1.0, c_ratio_sup(params, delta, grid))


def step2_inequality_check(G: SpectralDensity, delta: KTypeIndex, m: int,
                           c1: float | None = None) -> Step2Result:
    """Compare the shifted-type iterate norm with C_1^m times the Laplacian norm."""
    params = G.params
    lam = G.lam_grid
    pos = lam > 0
    lam, vals = lam[pos], G.values[pos]
    w = G.quadrature_weights()[pos] / (2 * np.pi)
    if c1 is None:
        c1 = step2_constant(params, delta, lam)
    rho = params.varrho
    rho_delta = rho + delta.p + delta.q
    shifted = params.shifted(delta.p, delta.q)
    g2 = np.abs(vals) ** 2
    lhs_int = np.sum(w * (lam**2 + rho_delta**2) ** (2 * m) * g2
                     / kostant_modulus(delta, lam, params) ** 2 * c_inv_sq(lam, shifted))
    rhs_int = np.sum(w * (lam**2 + rho**2) ** (2 * m) * g2 * c_inv_sq(lam, params))
    lhs = float(np.sqrt(lhs_int))
    rhs = float(c1**m * np.sqrt(rhs_int))
    ratio = 0.0 if rhs == 0 else lhs / rhs
    return Step2Result(lhs, rhs, ratio, float(c1))


# --------------------------------------------------------------- jets at r = 0

def jacobi_function_taylor(lams, params: NcJacobiParams, order):
    """Taylor coefficients in r at 0 of phi_lam(r); shape (len(lams), order+1)."""
    lams = np.atleast_1d(np.asarray(lams, dtype=float))
    kmax = order // 2
    sh2 = series.power(series.sinh_series(order), 2)
    pows = series.powers(-sh2, kmax)
    coefs = np.ones((len(lams), kmax + 1))
    a, half_rho = params.alpha, params.varrho / 2
    for k in range(kmax):
        coefs[:, k + 1] = coefs[:, k] * ((half_rho + k) ** 2 + lams**2 / 4) / ((k + 1) * (a + 1 + k))
    return coefs @ pows


def radial_taylor(G: SpectralDensity, order, delta: KTypeIndex | None = None):
    """Taylor coefficients at r = 0 of sinh^p r cosh^q r * (inverse transform of G).

    With ``delta`` the spectral data G are read as a density of type
    (alpha + p, beta + q), matching the delta-reduced slices.
    """
    params = G.params
    if delta is not None and (delta.p or delta.q):
        params = params.shifted(delta.p, delta.q)
    mu = G.quadrature_weights() * c_inv_sq(G.lam_grid, params) / (2 * np.pi)
    t = (mu * G.values) @ jacobi_function_taylor(G.lam_grid, params, order)
    if delta is not None:
        pref = series.mul(series.power(series.sinh_series(order), delta.p),
                          series.power(series.cosh_series(order), delta.q))
        t = series.mul(pref, t)
    return t
