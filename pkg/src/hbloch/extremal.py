"""Closed forms for the radial profile ``H_{n,a}(x) = x^(n-1) (1 - x^2)^a``.

These are the extremal quantities behind the norms of ``z^n + conj(z)^n``:
the maximiser ``r_n``, the maximum, the minimum on the band ``[r_n, r_{n+1}]``
and the large-n limit of ``n^a`` times that band minimum.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from .errors import ParameterDomain

__all__ = [
    "H",
    "log_H",
    "Extremals",
    "H_extremals",
    "maximiser",
    "H_band_limit",
    "znbar_norm",
    "znbar_limit",
    "power_normaliser",
]

LOG_DOMAIN_N = 64


def _check(n, alpha):
    if int(n) != n or n < 1:
        raise ParameterDomain("n must be a positive integer")
    if not alpha > 0:
        raise ParameterDomain("alpha must be positive")


def log_H(n: int, alpha: float, x):
    """``log H_{n,alpha}(x)``; -inf at the zeros."""
    _check(n, alpha)
    x = np.asarray(x, dtype=float)
    with np.errstate(divide="ignore"):
        lx = np.zeros_like(x) if n == 1 else (n - 1) * np.log(np.where(x > 0, x, 0.0))
        lw = alpha * np.log1p(-x * x)
    return lx + lw


def H(n: int, alpha: float, x):
    """``x^(n-1) (1 - x^2)^alpha`` on [0, 1]; evaluated in log-domain for n > 64."""
    _check(n, alpha)
    xa = np.asarray(x, dtype=float)
    if np.any((xa < 0) | (xa > 1)) or np.any(np.isnan(xa)):
        raise ParameterDomain("x must lie in [0, 1]")
    if n > LOG_DOMAIN_N:
        with np.errstate(under="ignore"):
            out = np.exp(log_H(n, alpha, xa))
    else:
        out = xa ** (n - 1) * (1.0 - xa * xa) ** alpha
    return float(out) if out.ndim == 0 else out


class Extremals(NamedTuple):
    r: float
    max_value: float
    band_min: float


def maximiser(n: int, alpha: float) -> float:
    """``r_n = sqrt((n-1) / (n-1+2 alpha))``, with ``r_1 = 0``."""
    _check(n, alpha)
    return math.sqrt((n - 1) / (n - 1 + 2 * alpha))


def _log_max(n, alpha):
    if n == 1:
        return 0.0
    d = n - 1 + 2 * alpha
    # log((n-1)/d) as log1p(-2a/d): the ratio is within 2a/d of 1, so log() would lose digits
    return alpha * math.log(2 * alpha / d) + 0.5 * (n - 1) * math.log1p(-2 * alpha / d)


def _log_band_min(n, alpha):
    d = n + 2 * alpha
    return alpha * math.log(2 * alpha / d) + 0.5 * (n - 1) * math.log1p(-2 * alpha / d)


def H_extremals(n: int, alpha: float) -> Extremals:
    """``(r_n, max H, min of H on [r_n, r_{n+1}] = H(r_{n+1}))``."""
    _check(n, alpha)
    r = maximiser(n, alpha)
    if n > LOG_DOMAIN_N:
        mx = math.exp(_log_max(n, alpha))
        bm = math.exp(_log_band_min(n, alpha))
    else:
        mx = 1.0 if n == 1 else (2 * alpha / (n - 1 + 2 * alpha)) ** alpha * \
            ((n - 1) / (n - 1 + 2 * alpha)) ** ((n - 1) / 2)
        bm = (2 * alpha / (n + 2 * alpha)) ** alpha * (n / (n + 2 * alpha)) ** ((n - 1) / 2)
    return Extremals(r, mx, bm)


def H_band_limit(alpha: float) -> float:
    """``lim n^alpha * band_min(n) = (2 alpha / e)^alpha``."""
    if not alpha > 0:
        raise ParameterDomain("alpha must be positive")
    return (2 * alpha / math.e) ** alpha


def znbar_norm(n: int, alpha: float) -> float:
    """Norm of ``z^n + conj(z)^n`` in the alpha-Bloch space: ``2 n max H``."""
    _check(n, alpha)
    return 2.0 * n * H_extremals(n, alpha).max_value


def znbar_limit(alpha: float) -> float:
    """``lim n^(alpha-1) ||z^n + conj(z)^n|| = 2 (2 alpha / e)^alpha``."""
    return 2.0 * H_band_limit(alpha)


def power_normaliser(alpha: float) -> float:
    """``(1/2) (e / 2 alpha)^alpha``, which maps the power-sequence limsup to an essential norm."""
    if not alpha > 0:
        raise ParameterDomain("alpha must be positive")
    return 0.5 * (math.e / (2 * alpha)) ** alpha
