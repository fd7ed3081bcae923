"""Brute-force oracles that never touch the closed forms they are used to check.

``golden_section_max`` maximises ``H_{n,a}`` by a dense grid followed by a
golden-section search whose comparisons use a cancellation-free log-ratio,
so the argmax is resolved to ~1e-15 instead of the sqrt(eps) limit of plain
value comparisons.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = ["log_ratio_H", "grid_max_H", "golden_section_max", "numerical_band_limit"]

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def _raw_log_H(n, alpha, x):
    x = np.asarray(x, dtype=float)
    with np.errstate(divide="ignore"):
        lx = (n - 1) * np.log(x) if n > 1 else np.zeros_like(x)
        return lx + alpha * np.log1p(-x * x)


def log_ratio_H(n, alpha, x1, x2):
    """``log H(x1) - log H(x2)`` for 0 < x1, x2 < 1, accurate even when x1 ~ x2."""
    d = x1 - x2
    out = alpha * math.log1p(-d * (x1 + x2) / ((1.0 - x2) * (1.0 + x2)))
    if n > 1:
        out += (n - 1) * math.log1p(d / x2)
    return out


def grid_max_H(n, alpha, points=100_000):
    """Index-level maximiser of H on a uniform grid of [0, 1]; returns (x, log H, spacing)."""
    x = np.linspace(0.0, 1.0, points)
    lh = _raw_log_H(n, alpha, x)
    i = int(np.argmax(lh))
    return float(x[i]), float(lh[i]), 1.0 / (points - 1)


def golden_section_max(n, alpha, points=100_000, iters=200):
    """(argmax, max) of ``H_{n,alpha}`` on [0, 1] by grid bracketing + golden section."""
    x0, _, h = grid_max_H(n, alpha, points)
    if x0 == 0.0 and n == 1:
        return 0.0, 1.0
    a = max(x0 - h, 1e-300)
    b = min(x0 + h, 1.0 - 1e-16)
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    for _ in range(iters):
        if b - a <= 4e-16 * b:
            break
        if log_ratio_H(n, alpha, c, d) > 0:
            b, d = d, c
            c = b - INV_PHI * (b - a)
        else:
            a, c = c, d
            d = a + INV_PHI * (b - a)
    x = 0.5 * (a + b)
    return x, float(math.exp(_raw_log_H(n, alpha, x)))


def numerical_band_limit(alpha, n):
    """``n^alpha * H_n(r_{n+1})`` with ``r_{n+1}`` located by the golden-section oracle."""
    r_next, _ = golden_section_max(n + 1, alpha)
    return math.exp(alpha * math.log(n) + float(_raw_log_H(n, alpha, r_next)))
