"""Truncated power series in one variable, used for exact jets at the origin.

A series is a 1-D float array ``t`` with ``t[n]`` the coefficient of
``x**n``; every operation truncates to a fixed length.
"""
from __future__ import annotations

from math import factorial

import numpy as np


def _taylor(order, scale, parity, sign_alternates):
    out = np.zeros(order + 1)
    for n in range(parity, order + 1, 2):
        k = (n - parity) // 2
        sgn = (-1) ** k if sign_alternates else 1
        out[n] = sgn * scale**n / factorial(n)
    return out


def sin_series(order, scale=1.0):
    """sin(scale * x)."""
    return _taylor(order, scale, 1, True)


def cos_series(order, scale=1.0):
    """cos(scale * x)."""
    return _taylor(order, scale, 0, True)


def sinh_series(order, scale=1.0):
    return _taylor(order, scale, 1, False)


def cosh_series(order, scale=1.0):
    return _taylor(order, scale, 0, False)


def mul(a, b):
    n = len(a)
    return np.convolve(a, b)[:n]


def power(a, k):
    out = np.zeros(len(a))
    out[0] = 1.0
    for _ in range(k):
        out = mul(out, a)
    return out


def powers(a, kmax):
    """[a**0, a**1, ..., a**kmax] as a (kmax+1, len(a)) array."""
    out = np.zeros((kmax + 1, len(a)))
    out[0, 0] = 1.0
    for k in range(1, kmax + 1):
        out[k] = mul(out[k - 1], a)
    return out


def derivatives(t):
    """Derivatives at 0 from Taylor coefficients: n! * t[n]."""
    t = np.asarray(t, dtype=float)
    fact = np.array([float(factorial(n)) for n in range(t.shape[-1])])
    return t * fact
