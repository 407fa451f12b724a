"""Geodesic-polar harmonic analysis on S^q and the projective models.

Sphere functions are sampled on a product grid (theta_i, xi_j): theta_i are
Gauss-Jacobi node images for (sin theta)^{q-1} d theta and xi_j are nodes of
a fiber quadrature on S^{q-1} with total mass one.  The orthonormal basis is

    S_{deg,l,k}(theta, xi) = a_{deg,l} sin^l(theta) C_{deg-l}^{l+(q-1)/2}(cos theta) S'_{l,k}(xi),

and coefficients are computed slice by slice as Jacobi coefficients of
g_{l,k} = 2^{l+(q-1)/2} sin^{-l}(theta) F_{l,k}(theta) with type (l+q/2-1, l+q/2-1).

The projective spaces P_l(C), P_l(H), P_2(Cay) are handled on the model
Omega_0 = (0, pi) x S^q with the measure
(sin theta/2)^{2q-1} (cos theta/2)^{2k+1} d theta d sigma_q and the basis
Q_{n,j,l}; P_q(R) is handled through even functions on S^q.
"""
from __future__ import annotations

import csv
import warnings
from dataclasses import dataclass, field

import numpy as np

from . import series
from .compact_jacobi import CpJacobiParams, ThetaRule, coeff, jacobi_series_in_s, theta_rule
from .specfun import (
    DomainError,
    gegenbauer,
    gegenbauer_jacobi_factor,
    jacobi_poly_deriv,
    jacobi_table,
    log_gamma,
    log_norm_constant,
)

__all__ = [
    "SingularityWarning",
    "CircleFiber",
    "ZonalFiber",
    "TableFiber",
    "SphereModel",
    "PolarFunction",
    "HarmonicCoefficients",
    "ProjectiveModel",
    "DominationResult",
    "a_nl",
    "basis_S",
    "fiber_project",
    "g_extract",
    "sphere_decompose",
    "sphere_synthesize",
    "sphere_apply_Delta_spectral",
    "sphere_operator_grid",
    "norm_domination_check",
    "even_lift_decompose",
    "projective_basis_Q",
    "projective_decompose",
    "projective_synthesize",
    "projective_apply_Lambda_spectral",
    "projective_operator_grid",
    "mode_taylor",
]

PROJECTIVE_TABLE = {
    # family: (min size, q(size), k(size))
    "complex": (2, lambda l: 2, lambda l: l - 2),
    "quaternion": (2, lambda l: 4, lambda l: 2 * l - 3),
    "cayley": (2, lambda l: 8, lambda l: 3),
}


class SingularityWarning(RuntimeWarning):
    """g-extraction blew up near an endpoint: input is not smooth there."""


# --------------------------------------------------------------------- fibers

class CircleFiber:
    """Circular harmonics 1, sqrt2 cos(l phi), sqrt2 sin(l phi) on S^1.

    Trapezoid rule on ``n`` equispaced nodes with weights 1/n; exact for
    trigonometric polynomials of degree < n.
    """

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("fiber needs at least one node")
        self.n = int(n)
        self.nodes = 2 * np.pi * np.arange(self.n) / self.n
        self.weights = np.full(self.n, 1.0 / self.n)

    def labels(self, lmax):
        out = [(0, 1)]
        for l in range(1, lmax + 1):
            out += [(l, 1), (l, 2)]
        return out

    def evaluate(self, l, k, xi):
        xi = np.asarray(xi, dtype=float)
        if l == 0:
            if k != 1:
                raise ValueError(f"no fiber mode (l, k) = ({l}, {k})")
            return np.ones_like(xi)
        if k == 1:
            return np.sqrt(2.0) * np.cos(l * xi)
        if k == 2:
            return np.sqrt(2.0) * np.sin(l * xi)
        raise ValueError(f"no fiber mode (l, k) = ({l}, {k})")

    def node_values(self, l, k):
        return self.evaluate(l, k, self.nodes)

    def antipode(self):
        """Index permutation for xi -> -xi, or None if nodes are not closed under it."""
        if self.n % 2:
            return None
        return (np.arange(self.n) + self.n // 2) % self.n


class ZonalFiber:
    """Constant functions only: one node of unit weight."""

    n = 1
    nodes = np.zeros(1)
    weights = np.ones(1)

    def labels(self, lmax):
        return [(0, 1)]

    def evaluate(self, l, k, xi):
        if (l, k) != (0, 1):
            raise ValueError(f"zonal fiber has no mode (l, k) = ({l}, {k})")
        return np.ones_like(np.asarray(xi, dtype=float))

    def node_values(self, l, k):
        return self.evaluate(l, k, self.nodes)

    def antipode(self):
        return np.zeros(1, dtype=int)


class TableFiber:
    """Orthonormal fiber basis supplied as a table of node values.

    CSV layout: a header ``weight,l:k,l:k,...`` and one row per fiber node
    holding the quadrature weight followed by each basis function's value.
    Weights must sum to one.
    """

    def __init__(self, weights, table: dict):
        self.weights = np.asarray(weights, dtype=float)
        self.n = len(self.weights)
        self.nodes = np.arange(self.n)
        self.table = {k: np.asarray(v, dtype=float) for k, v in table.items()}
        if abs(self.weights.sum() - 1) > 1e-12:
            raise ValueError("fiber weights must sum to 1")

    @classmethod
    def from_csv(cls, path):
        with open(path, newline="") as fh:
            rows = list(csv.reader(fh))
        header, body = rows[0], np.array(rows[1:], dtype=float)
        if header[0].strip() != "weight":
            raise ValueError("fiber table: first column must be 'weight'")
        table = {}
        for col, name in enumerate(header[1:], start=1):
            l, k = (int(t) for t in name.split(":"))
            table[(l, k)] = body[:, col]
        return cls(body[:, 0], table)

    def labels(self, lmax):
        return sorted(lk for lk in self.table if lk[0] <= lmax)

    def evaluate(self, l, k, xi):
        return self.table[(l, k)][np.asarray(xi, dtype=int)]

    def node_values(self, l, k):
        return self.table[(l, k)]

    def antipode(self):
        return None


# ------------------------------------------------------------------- models

@dataclass(frozen=True)
class SphereModel:
    """S^q sampled on theta nodes x fiber nodes."""

    q: int
    rule: ThetaRule
    fiber: object

    def __post_init__(self):
        if int(self.q) != self.q or self.q < 2:
            raise DomainError(f"sphere dimension q must be an integer >= 2, got {self.q}")

    @classmethod
    def for_degree(cls, q, deg_max, fiber=None):
        """Grid exact for products of two functions of degree <= deg_max."""
        rule = theta_rule(deg_max + 1, (q - 2) / 2, (q - 2) / 2)
        if fiber is None:
            fiber = CircleFiber(2 * deg_max + 2) if q == 2 else ZonalFiber()
        return cls(q, rule, fiber)

    @property
    def theta(self):
        return self.rule.theta

    @property
    def theta_weights(self):
        # integrates against (sin theta)^{q-1} d theta
        return self.rule.base_weights

    @property
    def shape(self):
        return (len(self.theta), self.fiber.n)

    def mass(self):
        return float(self.theta_weights.sum())

    def labels(self, deg_max):
        """All (deg, l, k) with deg <= deg_max supported by the fiber."""
        out = []
        for deg in range(deg_max + 1):
            for l, k in self.fiber.labels(deg):
                out.append((deg, l, k))
        return out


@dataclass(frozen=True)
class PolarFunction:
    values: np.ndarray
    model: object

    def __post_init__(self):
        vals = np.array(self.values)
        if vals.shape != self.model.shape:
            raise ValueError(f"samples of shape {vals.shape} do not match grid {self.model.shape}")
        if not np.all(np.isfinite(vals)):
            raise ValueError("samples must be finite")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    def norm_sq(self) -> float:
        w = np.outer(self.model.theta_weights, self.model.fiber.weights)
        return float(np.sum(w * np.abs(self.values) ** 2))


@dataclass(frozen=True)
class HarmonicCoefficients:
    """Expansion coefficients keyed by (total degree, fiber degree, fiber index)."""

    entries: dict
    model: object

    def __post_init__(self):
        for key, val in self.entries.items():
            deg, l, _ = key
            if not deg >= l >= 0:
                raise ValueError(f"invalid coefficient key {key}")
            if not np.isfinite(val):
                raise ValueError("coefficients must be finite")

    def keys(self):
        return sorted(self.entries)

    def get(self, key, default=0.0):
        return self.entries.get(key, default)

    def norm(self) -> float:
        return float(np.sqrt(sum(abs(v) ** 2 for v in self.entries.values())))

    def modes(self):
        """Distinct (l, k) fiber modes present."""
        return sorted({(l, k) for _, l, k in self.entries})

    def degree_max(self) -> int:
        return max((key[0] for key in self.entries), default=0)

    def eigenvalue(self, deg):
        if isinstance(self.model, ProjectiveModel):
            return (deg + self.model.rho_S) ** 2
        return (deg + (self.model.q - 1) / 2) ** 2


@dataclass(frozen=True)
class ProjectiveModel:
    """Trigonometric polar model Omega_0 of a compact rank-one projective space."""

    family: str
    size: int
    rule: ThetaRule | None = None
    sphere: SphereModel | None = None
    q: int = field(init=False)
    k: int = field(init=False)

    def __post_init__(self):
        if self.family == "real":
            if self.size < 2:
                raise DomainError("real projective space needs q >= 2")
            object.__setattr__(self, "q", int(self.size))
            object.__setattr__(self, "k", 0)
            return
        if self.family not in PROJECTIVE_TABLE:
            raise DomainError(f"unknown projective family {self.family!r}")
        lmin, qf, kf = PROJECTIVE_TABLE[self.family]
        if self.size < lmin or (self.family == "cayley" and self.size != 2):
            raise DomainError(f"family {self.family} does not admit size l = {self.size}")
        object.__setattr__(self, "q", qf(self.size))
        object.__setattr__(self, "k", kf(self.size))

    @classmethod
    def for_degree(cls, family, size, deg_max):
        probe = cls(family, size)
        if family == "real":
            return cls(family, size, None, SphereModel.for_degree(probe.q, 2 * (deg_max // 2) + 1))
        rule = theta_rule(deg_max + 1, probe.q - 1, probe.k)
        sphere = SphereModel.for_degree(probe.q, deg_max)
        return cls(family, size, rule, sphere)

    @property
    def rho_S(self) -> float:
        return (self.k + self.q) / 2

    @property
    def theta(self):
        return self.rule.theta

    @property
    def theta_weights(self):
        # integrates against (sin theta/2)^{2q-1} (cos theta/2)^{2k+1} d theta
        return self.rule.weights_for(self.q - 1, self.k)

    @property
    def fiber(self):
        return _SphereAsFiber(self.sphere)

    @property
    def shape(self):
        return (len(self.theta), self.fiber.n)

    def fiber_labels(self, j):
        """(l', k') pairs of the S^q harmonics of degree j, in l_idx order."""
        return [(l, k) for (deg, l, k) in self.sphere.labels(j) if deg == j]

    def labels(self, deg_max):
        out = []
        for deg in range(deg_max + 1):
            for j in range(deg + 1):
                for idx in range(1, len(self.fiber_labels(j)) + 1):
                    out.append((deg, j, idx))
        return out


class _SphereAsFiber:
    """Flattened S^q grid used as the fiber of Omega_0."""

    def __init__(self, sphere: SphereModel):
        self.sphere = sphere
        nt, nf = sphere.shape
        self.n = nt * nf
        self.weights = np.outer(sphere.theta_weights, sphere.fiber.weights).ravel()
        tt, ff = np.meshgrid(sphere.theta, np.arange(nf), indexing="ij")
        self.theta_nodes = tt.ravel()
        self.fiber_index = ff.ravel()

    def harmonic(self, j, l, k):
        fib_xi = self.sphere.fiber.nodes[self.fiber_index]
        return basis_S(self.sphere, j, l, k, self.theta_nodes, fib_xi)


# -------------------------------------------------------------- sphere basis

def a_nl(q, n, l) -> float:
    """Unit-norm constant of S_{n,l,k}, evaluated in log space."""
    if not n >= l >= 0:
        raise ValueError(f"a_nl needs n >= l >= 0, got n={n}, l={l}")
    alpha = l + (q - 2) / 2
    log_a = (
        -(l + (q - 1) / 2) * np.log(2.0)
        + log_gamma(2 * l + q - 1.0).real
        + log_gamma(n + q / 2).real
        - log_gamma(l + q / 2).real
        - log_gamma(n + l + q - 1.0).real
        + log_norm_constant(n - l, alpha, alpha)
    )
    return float(np.exp(log_a))


def _radial_S(q, deg, l, theta):
    lam = l + (q - 1) / 2
    return a_nl(q, deg, l) * np.sin(theta) ** l * gegenbauer(deg - l, lam, np.cos(theta))


def basis_S(model: SphereModel, deg, l, k, theta, xi):
    """S_{deg,l,k}(theta, xi); ``xi`` is interpreted by the model's fiber."""
    if not deg >= l >= 0:
        raise ValueError(f"basis_S needs deg >= l >= 0, got deg={deg}, l={l}")
    theta = np.asarray(theta, dtype=float)
    return _radial_S(model.q, deg, l, theta) * model.fiber.evaluate(l, k, xi)


def fiber_project(F: PolarFunction, l, k):
    """F_{l,k}(theta_i) = int F(theta_i, xi) S'_{l,k}(xi) d sigma(xi)."""
    fib = F.model.fiber
    return F.values @ (fib.weights * fib.node_values(l, k))


def _check_blowup(g):
    mag = np.abs(g)
    med = np.median(mag)
    if med > 0 and max(mag[0], mag[-1]) > 1e6 * med:
        warnings.warn("g-extraction: endpoint values exceed 1e6 x median; "
                      "the input does not vanish to the required order", SingularityWarning)


def g_extract(F_lk, l, q, theta):
    """g_{l,k}(theta) = 2^{l+(q-1)/2} sin^{-l}(theta) F_{l,k}(theta) at interior nodes."""
    theta = np.asarray(theta, dtype=float)
    g = 2.0 ** (l + (q - 1) / 2) * np.asarray(F_lk) / np.sin(theta) ** l
    _check_blowup(g)
    return g


def sphere_decompose(F: PolarFunction, deg_max) -> HarmonicCoefficients:
    """Coefficients (F, S_{n+l,l,k}) as Jacobi coefficients of g_{l,k}."""
    model = F.model
    q = model.q
    out = {}
    for l, k in model.fiber.labels(deg_max):
        g = g_extract(fiber_project(F, l, k), l, q, model.theta)
        alpha = l + q / 2 - 1
        params = CpJacobiParams(alpha, alpha)
        for n in range(deg_max - l + 1):
            out[(n + l, l, k)] = float(coeff(g, n, params, rule=model.rule))
    return HarmonicCoefficients(out, model)


def sphere_synthesize(c: HarmonicCoefficients, model: SphereModel | None = None,
                      theta=None, xi=None) -> PolarFunction | np.ndarray:
    """sum c_{deg,l,k} S_{deg,l,k}; on the model grid unless (theta, xi) are given."""
    model = model or c.model
    if theta is None:
        th = model.theta[:, None]
        xs = model.fiber.nodes[None, :]
    else:
        th, xs = np.asarray(theta, dtype=float), np.asarray(xi)
    vals = np.zeros(np.broadcast_shapes(np.shape(th), np.shape(xs)))
    for (deg, l, k), v in c.entries.items():
        if v != 0:
            vals = vals + v * basis_S(model, deg, l, k, th, xs)
    if theta is None:
        return PolarFunction(vals, model)
    return vals


def sphere_apply_Delta_spectral(c: HarmonicCoefficients, m: int) -> HarmonicCoefficients:
    """Multiply entry (deg, l, k) by ((deg + (q-1)/2)^2)^m."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    return HarmonicCoefficients(
        {key: v * c.eigenvalue(key[0]) ** m for key, v in c.entries.items()}, c.model
    )


def _gegenbauer_derivs(deg, l, q, theta):
    """h, h', h'' for h = a sin^l C_{deg-l}^{lam}(cos theta), exact."""
    lam = l + (q - 1) / 2
    n = deg - l
    al = lam - 0.5
    fac = a_nl(q, deg, l) * gegenbauer_jacobi_factor(n, lam)
    x, s = np.cos(theta), np.sin(theta)
    p0 = jacobi_table(n, al, al, x)[n]
    p1 = jacobi_poly_deriv(n, al, al, x, 1)
    p2 = jacobi_poly_deriv(n, al, al, x, 2)
    c0, c1, c2 = p0, -s * p1, s * s * p2 - x * p1        # d/dtheta of P(cos theta)
    e0 = s**l
    e1 = l * s ** (l - 1) * x if l else np.zeros_like(s)
    e2 = (l * (l - 1) * s ** (l - 2) * x * x if l > 1 else np.zeros_like(s)) - l * s**l
    return fac * e0 * c0, fac * (e1 * c0 + e0 * c1), fac * (e2 * c0 + 2 * e1 * c1 + e0 * c2)


def sphere_operator_grid(c: HarmonicCoefficients, theta, xi):
    """Polar-form Laplacian applied pointwise, with exact theta derivatives.

    -d^2/dtheta^2 - (q-1) cot(theta) d/dtheta + (q-1)^2/4 + l(l+q-2)/sin^2(theta)
    on each (l, k) slice.
    """
    model = c.model
    q = model.q
    theta = np.asarray(theta, dtype=float)
    out = 0.0
    for (deg, l, k), v in c.entries.items():
        if v == 0:
            continue
        h0, h1, h2 = _gegenbauer_derivs(deg, l, q, theta)
        radial = (-h2 - (q - 1) / np.tan(theta) * h1 + (q - 1) ** 2 / 4 * h0
                  + l * (l + q - 2) / np.sin(theta) ** 2 * h0)
        out = out + v * radial * model.fiber.evaluate(l, k, xi)
    return out


@dataclass(frozen=True)
class DominationResult:
    lhs: float
    rhs: float
    ratio: float
    constant: float


def norm_domination_check(c: HarmonicCoefficients, l, k, m) -> DominationResult:
    """Slice iterate norm against (1 + 2l/(q-1))^{2m} ||Delta^m f||."""
    q = c.model.q
    shift = (2 * l + q - 1) / 2
    lhs_sq = sum(abs(v) ** 2 * ((deg - l) + shift) ** (4 * m)
                 for (deg, ll, kk), v in c.entries.items() if (ll, kk) == (l, k))
    full_sq = sum(abs(v) ** 2 * c.eigenvalue(deg) ** (2 * m)
                  for (deg, _, _), v in c.entries.items())
    const = (1 + 2 * l / (q - 1)) ** (2 * m)
    lhs, rhs = float(np.sqrt(lhs_sq)), float(const * np.sqrt(full_sq))
    return DominationResult(lhs, rhs, 0.0 if rhs == 0 else lhs / rhs, const)


def even_lift_decompose(F: PolarFunction, deg_max, tol=1e-10) -> HarmonicCoefficients:
    """Decompose an antipodally even function on S^q (a function on P_q(R))."""
    perm = F.model.fiber.antipode()
    if perm is None:
        raise ValueError("even_lift_decompose: fiber grid is not closed under xi -> -xi")
    flipped = F.values[::-1][:, perm]
    scale = max(1.0, float(np.max(np.abs(F.values))))
    if np.max(np.abs(F.values - flipped)) > tol * scale:
        raise ValueError("even_lift_decompose: input fails antipodal symmetry")
    c = sphere_decompose(F, deg_max)
    return HarmonicCoefficients(
        {key: (v if key[0] % 2 == 0 else 0.0) for key, v in c.entries.items()}, F.model
    )


# ---------------------------------------------------------- projective basis

def _b_nj(model: ProjectiveModel, n, j):
    return float(np.exp(log_norm_constant(n - j, model.q - 1 + 2 * j, model.k)))


def _fiber_harmonic(model: ProjectiveModel, j, l_idx, xi):
    labels = model.fiber_labels(j)
    if not 1 <= l_idx <= len(labels):
        raise ValueError(f"no S^{model.q} harmonic with j={j}, l={l_idx}")
    l, k = labels[l_idx - 1]
    theta_s, fib_xi = xi
    return basis_S(model.sphere, j, l, k, theta_s, fib_xi)


def projective_basis_Q(model: ProjectiveModel, n, j, l_idx, theta, xi, form="cos"):
    """Q_{n,j,l}(theta, xi), xi = (theta', fiber point) on S^q.

    ``form="sin"`` evaluates b (sin theta/2)^{2j} P^{(k, q-1+2j)}(2 sin^2(theta/2) - 1);
    ``form="cos"`` uses (-1)^{n-j} P^{(q-1+2j, k)}(cos theta).  Both agree.
    """
    if not n >= j >= 0:
        raise ValueError(f"projective_basis_Q needs n >= j >= 0, got n={n}, j={j}")
    theta = np.asarray(theta, dtype=float)
    a, kk = model.q - 1 + 2 * j, model.k
    if form == "sin":
        poly = jacobi_table(n - j, kk, a, 2 * np.sin(theta / 2) ** 2 - 1)[n - j]
    elif form == "cos":
        poly = (-1) ** (n - j) * jacobi_table(n - j, a, kk, np.cos(theta))[n - j]
    else:
        raise ValueError(f"unknown form {form!r}")
    radial = _b_nj(model, n, j) * np.sin(theta / 2) ** (2 * j) * poly
    return radial * _fiber_harmonic(model, j, l_idx, xi)


def projective_decompose(F: PolarFunction, model: ProjectiveModel | None = None,
                         deg_max: int = 0) -> HarmonicCoefficients:
    """Coefficients (F, Q_{n+j,j,l}) keyed (n+j, j, l).

    Real projective inputs are even functions on S^q and go through
    :func:`even_lift_decompose`.
    """
    model = model or F.model
    if model.family == "real":
        return even_lift_decompose(F, deg_max)
    fib = model.fiber
    theta = model.theta
    out = {}
    for j in range(deg_max + 1):
        params = CpJacobiParams(model.q - 1 + 2 * j, model.k)
        for l_idx, (l, k) in enumerate(model.fiber_labels(j), start=1):
            F_jl = F.values @ (fib.weights * fib.harmonic(j, l, k))
            g = (-1) ** j * F_jl / np.sin(theta / 2) ** (2 * j)
            _check_blowup(g)
            for n in range(deg_max - j + 1):
                sign = (-1) ** (n + j)
                out[(n + j, j, l_idx)] = float(sign * coeff(g, n, params, rule=model.rule))
    return HarmonicCoefficients(out, model)


def projective_synthesize(c: HarmonicCoefficients, model: ProjectiveModel | None = None):
    """sum c Q on the Omega_0 grid."""
    model = model or c.model
    fib = model.fiber
    vals = np.zeros(model.shape)
    for (deg, j, l_idx), v in c.entries.items():
        if v == 0:
            continue
        radial = _projective_radial(model, deg, j, model.theta)
        l, k = model.fiber_labels(j)[l_idx - 1]
        vals = vals + v * np.outer(radial, fib.harmonic(j, l, k))
    return PolarFunction(vals, model)


def _projective_radial(model, n, j, theta):
    a = model.q - 1 + 2 * j
    poly = (-1) ** (n - j) * jacobi_table(n - j, a, model.k, np.cos(theta))[n - j]
    return _b_nj(model, n, j) * np.sin(theta / 2) ** (2 * j) * poly


def projective_apply_Lambda_spectral(c: HarmonicCoefficients, m: int) -> HarmonicCoefficients:
    """Multiply entry of total degree n by ((n + (q+k)/2)^2)^m."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    return HarmonicCoefficients(
        {key: v * c.eigenvalue(key[0]) ** m for key, v in c.entries.items()}, c.model
    )


def _projective_radial_derivs(model, n, j, theta):
    a, kk = model.q - 1 + 2 * j, model.k
    m = n - j
    fac = _b_nj(model, n, j) * (-1) ** m
    x, s = np.cos(theta), np.sin(theta)
    p1 = jacobi_poly_deriv(m, a, kk, x, 1)
    c0 = jacobi_table(m, a, kk, x)[m]
    c1 = -s * p1
    c2 = s * s * jacobi_poly_deriv(m, a, kk, x, 2) - x * p1
    sh, ch = np.sin(theta / 2), np.cos(theta / 2)
    e0 = sh ** (2 * j)
    e1 = j * sh ** (2 * j - 1) * ch if j else np.zeros_like(theta)
    e2 = (j * (2 * j - 1) / 2 * sh ** (2 * j - 2) * ch**2 - j / 2 * sh ** (2 * j)) if j else np.zeros_like(theta)
    return fac * e0 * c0, fac * (e1 * c0 + e0 * c1), fac * (e2 * c0 + 2 * e1 * c1 + e0 * c2)


def projective_operator_grid(c: HarmonicCoefficients, theta, xi):
    """Lambda_S applied pointwise with exact theta derivatives.

    -d^2 - [(q-1-k) + (q+k) cos theta]/sin theta d + j(j+q-1)/sin^2(theta/2) + rho_S^2
    on each slice with an S^q harmonic of degree j.
    """
    model = c.model
    q, kk = model.q, model.k
    theta = np.asarray(theta, dtype=float)
    out = 0.0
    for (n, j, l_idx), v in c.entries.items():
        if v == 0:
            continue
        h0, h1, h2 = _projective_radial_derivs(model, n, j, theta)
        radial = (-h2 - ((q - 1 - kk) + (q + kk) * np.cos(theta)) / np.sin(theta) * h1
                  + j * (j + q - 1) / np.sin(theta / 2) ** 2 * h0 + model.rho_S**2 * h0)
        out = out + v * radial * _fiber_harmonic(model, j, l_idx, xi)
    return out


# ------------------------------------------------------------------ jets at 0

def mode_taylor(c: HarmonicCoefficients, order: int) -> dict:
    """Taylor coefficients in theta at 0 of each fiber-mode profile.

    Returns {(l, k) or (j, l): array of length order + 1}.  Built from exact
    series of sin, cos and the Jacobi polynomials in s = sin^2(theta/2).
    """
    model = c.model
    s = series.power(series.sin_series(order, 0.5), 2)
    s_pows = series.powers(s, order // 2 + 1)
    out = {}
    projective = isinstance(model, ProjectiveModel) and model.family != "real"
    for (deg, a, b), v in c.entries.items():
        mode = (a, b)
        t = out.setdefault(mode, np.zeros(order + 1))
        if v == 0:
            continue
        if projective:
            j = a
            al = model.q - 1 + 2 * j
            poly = jacobi_series_in_s([deg - j], al, model.k, order // 2)[0]
            prof = (poly @ s_pows[: len(poly)]) * _b_nj(model, deg, j) * (-1) ** (deg - j)
            pref = series.power(series.sin_series(order, 0.5), 2 * j)
        else:
            l, q = a, model.q
            lam = l + (q - 1) / 2
            poly = jacobi_series_in_s([deg - l], lam - 0.5, lam - 0.5, order // 2)[0]
            fac = a_nl(q, deg, l) * gegenbauer_jacobi_factor(deg - l, lam)
            prof = (poly @ s_pows[: len(poly)]) * fac
            pref = series.power(series.sin_series(order), l)
        out[mode] = t + v * series.mul(pref, prof)
    return out
