"""Deterministic synthetic inputs for every model."""
from __future__ import annotations

import numpy as np

from .compact_jacobi import CoefficientSequence, CpJacobiParams
from .noncompact import NcJacobiParams, SpectralDensity, panel_gauss_legendre
from .sphere_projective import HarmonicCoefficients, ProjectiveModel, SphereModel

KINDS = ("band-limited-random", "single-mode", "gevrey-decay", "zonal-polynomial")


def _rng(seed):
    if seed is None:
        raise ValueError("seed required for random inputs")
    return np.random.default_rng(int(seed))


def spectral_grid(lam_max, panel_width=1.0, order=16):
    n_panels = max(1, int(np.ceil(lam_max / panel_width)))
    return panel_gauss_legendre(0.0, lam_max, n_panels, order)


def noncompact_input(kind, params: NcJacobiParams, lam_max=10.0, seed=None, n_terms=6,
                     lam0=4.0, width=0.5, s=0.5) -> SpectralDensity:
    """Spectral densities on [0, lam_max].

    band-limited-random: sum_j u_j cos(j pi lam / lam_max), u_j ~ U[-1, 1];
    single-mode: a narrow even Gaussian bump at lam0;
    gevrey-decay: exp(-(1 + lam)^s), truncated at lam_max.
    """
    lam, w = spectral_grid(lam_max)
    if kind == "band-limited-random":
        u = _rng(seed).uniform(-1, 1, n_terms)
        vals = np.cos(np.outer(lam, np.arange(n_terms)) * np.pi / lam_max) @ u
    elif kind == "single-mode":
        vals = np.exp(-((lam - lam0) / width) ** 2 / 2) + np.exp(-((lam + lam0) / width) ** 2 / 2)
    elif kind == "gevrey-decay":
        vals = np.exp(-((1 + lam) ** s))
    else:
        raise ValueError(f"kind {kind!r} not available for the noncompact model")
    return SpectralDensity(lam, vals, params, w)


def compact_input(kind, params: CpJacobiParams, N=20, seed=None, n=3, s=0.5) -> CoefficientSequence:
    """Coefficient sequences c_0..c_N.

    band-limited-random: uniform on [-1, 1]; single-mode: e_n;
    gevrey-decay: exp(-(n+1)^s).
    """
    if kind == "band-limited-random":
        vals = _rng(seed).uniform(-1, 1, N + 1)
    elif kind == "single-mode":
        if not 0 <= n <= N:
            raise ValueError(f"single-mode index n={n} outside 0..{N}")
        vals = np.zeros(N + 1)
        vals[n] = 1.0
    elif kind == "gevrey-decay":
        vals = np.exp(-((np.arange(N + 1) + 1.0) ** s))
    else:
        raise ValueError(f"kind {kind!r} not available for the compact model")
    return CoefficientSequence(vals, params)


def harmonic_input(kind, model, deg_max=4, seed=None, key=None, s=0.5) -> HarmonicCoefficients:
    """Sphere or projective coefficients up to total degree deg_max.

    zonal-polynomial fills only the modes with fiber degree 0.  For the real
    projective family only even total degrees are used.
    """
    if isinstance(model, ProjectiveModel) and model.family == "real":
        labels = [k for k in model.sphere.labels(deg_max) if k[0] % 2 == 0]
        target = model.sphere
    else:
        labels = model.labels(deg_max)
        target = model
    if kind == "band-limited-random":
        u = _rng(seed).uniform(-1, 1, len(labels))
        entries = dict(zip(labels, u.tolist()))
    elif kind == "zonal-polynomial":
        zonal = [k for k in labels if k[1] == 0]
        u = _rng(seed).uniform(-1, 1, len(zonal))
        entries = dict(zip(zonal, u.tolist()))
    elif kind == "single-mode":
        key = tuple(key) if key is not None else labels[-1]
        if key not in labels:
            raise ValueError(f"single-mode key {key} not in the model's index set")
        entries = {key: 1.0}
    elif kind == "gevrey-decay":
        entries = {k: float(np.exp(-((k[0] + 1.0) ** s))) for k in labels if k[1] == 0}
    else:
        raise ValueError(f"unknown input kind {kind!r}")
    return HarmonicCoefficients(entries, target)


def synthetic_input(kind, model, seed=None, **opts):
    """Dispatch on the model type."""
    if kind not in KINDS:
        raise ValueError(f"unknown input kind {kind!r}")
    if isinstance(model, NcJacobiParams):
        return noncompact_input(kind, model, seed=seed, **opts)
    if isinstance(model, CpJacobiParams):
        return compact_input(kind, model, seed=seed, **opts)
    if isinstance(model, (SphereModel, ProjectiveModel)):
        return harmonic_input(kind, model, seed=seed, **opts)
    raise TypeError(f"no generator for {type(model).__name__}")
