"""Laplacian-iterate norms, Carleman sums, jets at the origin and verdicts.

Every model is reduced to a discrete spectral measure: weights ``w_i`` on
spectral points with multiplier ``mu_i``, so that

    ||Delta^m f||^2 = sum_i w_i |f_i|^2 mu_i^{2m},

accumulated with log-sum-exp.  Noncompact data use mu = lam^2 + rho^2, the
compact models use (n + shift)^2 read off the coefficient key.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass, field

import mpmath as mp
import numpy as np
from scipy.special import logsumexp

from .compact_jacobi import CoefficientSequence, CpJacobiParams, trig_poly_taylor
from .noncompact import SpectralDensity, radial_taylor
from .series import derivatives
from .sphere_projective import HarmonicCoefficients, mode_taylor

__all__ = [
    "CarlemanReport",
    "spectral_measure",
    "log_iterate_norms",
    "iterate_norms",
    "carleman_sum",
    "jet_at_zero",
    "first_nonvanishing_jet",
    "chernoff_verdict",
    "gevrey_coefficients",
    "annihilate_jets",
]

TOL_SLOPE = 0.1
ZERO = "zero function"


@dataclass
class CarlemanReport:
    iterate_norms: list
    log_iterate_norms: list
    growth: list                 # a_m = ||Delta^m f||^{1/(2m)}, m = 1..M
    partial_sums: list           # S_M = sum_{m<=M} 1/a_m
    slope: float | None
    fitted_limit: float | None
    verdict: str
    jets: dict = field(default_factory=dict)
    first_nonvanishing_jet: int | None = None
    norm: float = 0.0
    flag: bool = False
    log_convex: bool = True
    growth_monotone: bool = True

    def to_dict(self):
        return asdict(self)


def spectral_measure(spec):
    """(weights, |values|^2, multipliers) of the discrete spectral measure."""
    if isinstance(spec, SpectralDensity):
        w = spec.measure()
        mult = spec.lam_grid**2 + spec.params.varrho**2
        return w, np.abs(spec.values) ** 2, mult
    if isinstance(spec, CoefficientSequence):
        n = np.arange(spec.N + 1)
        return np.ones(len(n)), np.abs(spec.values) ** 2, spec.params.eigenvalue(n)
    if isinstance(spec, HarmonicCoefficients):
        keys = spec.keys()
        vals = np.array([spec.get(k) for k in keys], dtype=float)
        mult = np.array([spec.eigenvalue(k[0]) for k in keys], dtype=float)
        return np.ones(len(keys)), np.abs(vals) ** 2, mult
    raise TypeError(f"no spectral model for {type(spec).__name__}")


def log_iterate_norms(spec, M):
    """log ||Delta^m f|| for m = 0..M; -inf for the zero function."""
    if M < 1:
        raise ValueError("M must be at least 1")
    w, g2, mult = spectral_measure(spec)
    keep = (w * g2) > 0
    if not keep.any():
        return np.full(M + 1, -np.inf)
    base = np.log(w[keep] * g2[keep])
    logmu = np.log(mult[keep])
    m = np.arange(M + 1)[:, None]
    return 0.5 * logsumexp(base[None, :] + 2 * m * logmu[None, :], axis=1)


def iterate_norms(spec, M):
    """||Delta^m f|| for m = 0..M by Plancherel with the model's multiplier.

    Summed directly while the terms fit in double range, so that one-term
    spectra give mu^m exactly; the log-space value is used beyond that.
    """
    logn = log_iterate_norms(spec, M)
    w, g2, mult = spectral_measure(spec)
    out = np.exp(logn)
    mass = w * g2
    for m in range(M + 1):
        if np.isfinite(logn[m]) and 2 * logn[m] < 700:
            out[m] = np.sqrt(np.sum(mass * mult ** (2 * m)))
    return out


def _fit(logm, loga):
    slope = np.polyfit(logm, loga, 1)[0]
    m = np.exp(logm)
    # log a_m ~ A + B/m + D log(m)/m models saturation at a band edge
    design = np.column_stack([np.ones_like(m), 1 / m, logm / m])
    coef, *_ = np.linalg.lstsq(design, loga, rcond=None)
    return float(slope), float(np.exp(coef[0]))


def carleman_sum(log_norms, M=None, tol_slope=TOL_SLOPE) -> CarlemanReport:
    """Partial Carleman sums and the slope-fit verdict from log norms (m = 0..M)."""
    log_norms = np.asarray(log_norms, dtype=float)
    if M is None:
        M = len(log_norms) - 1
    log_norms = log_norms[: M + 1]
    norms = np.exp(log_norms)
    if not np.all(np.isfinite(log_norms)):
        return CarlemanReport(norms.tolist(), [None] * (M + 1), [0.0] * M, [0.0] * M,
                              None, None, ZERO)
    m = np.arange(1, M + 1)
    loga = log_norms[1:] / (2 * m)
    a = np.exp(loga)
    partial = np.cumsum(1 / a)
    top = m >= max(1, (M + 1) // 2)
    if top.sum() >= 3:
        slope, limit = _fit(np.log(m[top]), loga[top])
    else:
        slope, limit = float(np.polyfit(np.log(m), loga, 1)[0]) if M > 1 else 0.0, float(a[-1])
    if slope < 1 - tol_slope:
        verdict = "divergent"
    elif slope > 1 + tol_slope:
        verdict = "convergent"
    else:
        verdict = "inconclusive"
    second = log_norms[:-2] + log_norms[2:] - 2 * log_norms[1:-1]
    log_convex = bool(np.all(second >= -1e-12 * np.maximum(1, np.abs(log_norms[1:-1]))))
    # power means of the normalized measure: nondecreasing in m
    logp = (log_norms[1:] - log_norms[0]) / (2 * m)
    monotone = bool(np.all(np.diff(logp) >= -1e-12 * np.maximum(1, np.abs(logp[1:]))))
    return CarlemanReport(norms.tolist(), log_norms.tolist(), a.tolist(), partial.tolist(),
                          slope, limit, verdict, log_convex=log_convex, growth_monotone=monotone)


def _mode_name(mode):
    return ":".join(str(int(v)) for v in mode)


def jet_at_zero(spec, M_jet, delta=None) -> dict:
    """Derivatives of order 0..M_jet at the origin, per fiber mode.

    Radial and one-dimensional data are reported under the single mode "0".
    """
    if isinstance(spec, SpectralDensity):
        return {"0": derivatives(radial_taylor(spec, M_jet, delta))}
    if isinstance(spec, CoefficientSequence):
        return {"0": derivatives(trig_poly_taylor(spec, M_jet))}
    if isinstance(spec, HarmonicCoefficients):
        return {_mode_name(k): derivatives(t) for k, t in sorted(mode_taylor(spec, M_jet).items())}
    raise TypeError(f"no jet model for {type(spec).__name__}")


def first_nonvanishing_jet(jets: dict, tol):
    orders = [int(np.argmax(np.abs(d) > tol)) for d in jets.values() if np.any(np.abs(d) > tol)]
    return min(orders) if orders else None


def chernoff_verdict(spec, M, M_jet, tol=1e-10, tol_slope=TOL_SLOPE, delta=None) -> CarlemanReport:
    """Carleman evidence and jets, with the theorem-consistency flag.

    The flag marks the combination the quasi-analyticity theorems exclude:
    a divergent Carleman sum, all jets below ``tol`` and a nonzero norm.
    """
    rep = carleman_sum(log_iterate_norms(spec, M), M, tol_slope)
    rep.iterate_norms = iterate_norms(spec, M).tolist()
    jets = jet_at_zero(spec, M_jet, delta)
    rep.jets = {k: v.tolist() for k, v in jets.items()}
    rep.norm = rep.iterate_norms[0]
    rep.first_nonvanishing_jet = first_nonvanishing_jet(jets, tol)
    all_small = rep.first_nonvanishing_jet is None
    rep.flag = bool(rep.verdict == "divergent" and all_small and rep.norm > tol)
    return rep


# ------------------------------------------------------------ Gevrey examples

def gevrey_coefficients(N, params: CpJacobiParams, s=0.5):
    """c_n = exp(-(n+1)^s), n = 0..N."""
    n = np.arange(N + 1, dtype=float)
    return CoefficientSequence(np.exp(-((n + 1) ** s)), params)


def _exact_jet_matrix(n_max, alpha, beta, order):
    """mpmath matrix of d^d/dtheta^d P_n(theta) at 0, rows d = 0..order, cols n."""
    half = mp.mpf(1) / 2
    s = [mp.mpf(0)] * (order + 1)
    for j in range(1, order // 2 + 1):        # sin^2(theta/2) = (1 - cos theta)/2
        s[2 * j] = (-1) ** (j + 1) * half / mp.factorial(2 * j)
    pows = [[mp.mpf(1)] + [mp.mpf(0)] * order]
    for _ in range(order // 2):
        prev = pows[-1]
        pows.append([mp.fsum(prev[i] * s[d - i] for i in range(d + 1)) for d in range(order + 1)])
    a, b = mp.mpf(alpha), mp.mpf(beta)
    out = mp.matrix(order + 1, n_max + 1)
    for n in range(n_max + 1):
        norm = mp.sqrt((2 * n + a + b + 1) * mp.gamma(n + 1) * mp.gamma(n + a + b + 1)
                       / (mp.gamma(n + a + 1) * mp.gamma(n + b + 1))) if n + a + b + 1 != 0 \
            else mp.sqrt(mp.gamma(a + b + 2) / (mp.gamma(a + 1) * mp.gamma(b + 1)))
        coef = mp.rf(a + 1, n) / mp.factorial(n)
        for k in range(order // 2 + 1):
            for d in range(order + 1):
                out[d, n] += norm * coef * pows[k][d] * mp.factorial(d)
            coef *= (-n + k) * (n + a + b + 1 + k) / ((a + 1 + k) * (k + 1))
    return out


def annihilate_jets(c: CoefficientSequence, orders=6, n_adjust=60, dps=50):
    """Least-squares correction of c_0..c_{n_adjust} so that the partial sum
    over n <= n_adjust has zero derivatives at 0 up to ``orders``.

    The jet matrix and the minimum-norm correction are computed in
    ``dps``-digit arithmetic; only the final rounding to double remains.
    Returns (corrected sequence, jets of the corrected partial sum).
    """
    params = c.params
    vals = c.values.copy()
    with mp.workdps(dps):
        J = _exact_jet_matrix(n_adjust, params.alpha, params.beta, orders)
        rows = [d for d in range(orders + 1)
                if any(J[d, n] != 0 for n in range(n_adjust + 1))]
        A = mp.matrix([[J[d, n] for n in range(n_adjust + 1)] for d in rows])

        def jets_of(v):
            return J * mp.matrix([mp.mpf(float(x)) for x in v[: n_adjust + 1]])

        for _ in range(2):
            r = -mp.matrix([jets_of(vals)[d] for d in rows])
            delta = A.T * mp.lu_solve(A * A.T, r)
            vals[: n_adjust + 1] = [float(mp.mpf(float(x)) + dx)
                                    for x, dx in zip(vals[: n_adjust + 1], delta)]
        jets = np.array([float(x) for x in jets_of(vals)])
    return CoefficientSequence(vals, params), jets
