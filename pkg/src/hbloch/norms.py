"""Alpha-Bloch seminorms and norms of harmonic functions.

All suprema go through :func:`maximize`: a scan of the boundary shells, then
bounded Brent searches in radius and angle around the best shell points,
then a compass search in the (shell depth, angle) plane.  The radial
coordinate is the shell depth ``t`` with ``r = 1 - 2**-t``, which keeps the
search well conditioned right up to the circle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy.optimize import minimize_scalar

from .disk import DiskPoint, SamplingScheme, disk_samples
from .errors import ParameterDomain
from .harmonic import HarmonicFunction, evaluate

__all__ = [
    "AlphaWeight",
    "SupremumResult",
    "maximize",
    "weighted_derivative",
    "seminorm",
    "norm",
    "LittleBlochProfile",
    "little_bloch_profile",
    "aitken_limit",
    "DEFAULT_SCHEME",
]

DEFAULT_SCHEME = SamplingScheme()

# number of shell maxima that seed local refinement
_CANDIDATES = 3
_T_MAX = 52.0


@dataclass(frozen=True)
class AlphaWeight:
    alpha: float

    def __post_init__(self):
        a = float(self.alpha)
        if not (a > 0 and math.isfinite(a)):
            raise ParameterDomain(f"alpha must be a positive real, got {self.alpha!r}")
        object.__setattr__(self, "alpha", a)

    def __float__(self):
        return self.alpha


def _alpha(a) -> float:
    return a.alpha if isinstance(a, AlphaWeight) else AlphaWeight(a).alpha


@dataclass(frozen=True)
class SupremumResult:
    """Outcome of a disk supremum.

    ``shell_profile`` holds ``(radius, max)`` per scanned shell (radius 0 is
    the origin) plus any refined point that beat its shell.
    """

    value: float
    witness: DiskPoint
    shell_profile: tuple
    scheme_used: SamplingScheme
    flags: tuple = field(default=())

    def __float__(self):
        return self.value


def _polar(t, theta):
    t = np.asarray(t, dtype=float)
    r = 1.0 - np.exp2(-t)
    d = 1.0 - r
    zc = d * (1.0 + r)
    z = r * np.exp(1j * np.asarray(theta, dtype=float))
    return z, zc, r


def _clean(v):
    v = np.asarray(v, dtype=float)
    return np.where(np.isnan(v), -np.inf, v)


class _Objective:
    def __init__(self, func):
        self.func = func

    def __call__(self, t, theta):
        z, zc, _ = _polar(np.atleast_1d(t), np.atleast_1d(theta))
        return _clean(self.func(z, zc))

    def scalar(self, t, theta):
        return float(self(t, theta)[0])


def _refine(obj, t0, th0, v0, dtheta, t_max, rounds):
    t, th, v = t0, th0, v0
    for k in range(rounds):
        width = 1.0 / (2 ** k)
        lo, hi = max(0.0, t - width), min(t_max, t + width)
        res = minimize_scalar(lambda s: -obj.scalar(s, th), bounds=(lo, hi),
                              method="bounded", options={"xatol": 1e-11})
        if -res.fun > v:
            t, v = float(res.x), float(-res.fun)
        span = dtheta * width
        res = minimize_scalar(lambda a: -obj.scalar(t, a), bounds=(th - span, th + span),
                              method="bounded", options={"xatol": 1e-12})
        if -res.fun > v:
            th, v = float(res.x), float(-res.fun)
        # compass search over the 8 neighbours
        st, sa = 0.25 * width, 0.25 * span
        dirs = np.array([(1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (1, -1), (-1, 1), (-1, -1)], float)
        for _ in range(40):
            if st < 1e-10 and sa < 1e-12:
                break
            tt = np.clip(t + st * dirs[:, 0], 0.0, t_max)
            aa = th + sa * dirs[:, 1]
            vals = obj(tt, aa)
            i = int(np.argmax(vals))
            if vals[i] > v:
                t, th, v = float(tt[i]), float(aa[i]), float(vals[i])
            else:
                st *= 0.5
                sa *= 0.5
    return t, th, v


def maximize(func: Callable, scheme: Optional[SamplingScheme] = None,
             include_origin: bool = True) -> SupremumResult:
    """Supremum over the disk of ``func(z, one_minus_abs_z_sq)`` (vectorised, non-negative)."""
    scheme = scheme or DEFAULT_SCHEME
    s = disk_samples(scheme)
    vals = _clean(func(s.z, s.complement))
    counts = scheme.shell_counts()
    edges = np.concatenate([[0], np.cumsum(counts)])
    profile = []
    shell_best = []
    for j in range(scheme.radial_levels):
        seg = vals[edges[j]:edges[j + 1]]
        i = int(np.argmax(seg))
        shell_best.append((float(seg[i]), edges[j] + i, j + 1))
        profile.append((float(s.radius[edges[j]]), max(float(seg[i]), 0.0)))

    best_v, best_point = -np.inf, None
    if include_origin:
        v0 = float(_clean(func(np.zeros(1, complex), np.ones(1)))[0])
        profile.insert(0, (0.0, max(v0, 0.0)))
        best_v, best_point = v0, DiskPoint(0j, 1.0)
    for v, i, _ in shell_best:
        if v > best_v:
            best_v, best_point = v, s.point(i)

    if scheme.refinement_rounds > 0:
        obj = _Objective(func)
        t_max = min(_T_MAX, scheme.radial_levels + 1.0)
        order = sorted(shell_best, key=lambda x: -x[0])[:_CANDIDATES]
        for v, i, j in order:
            if not np.isfinite(v):
                continue
            dtheta = 2.0 * np.pi / counts[j - 1]
            t, th, rv = _refine(obj, float(j), float(s.angle[i]), v, dtheta, t_max,
                                scheme.refinement_rounds)
            if rv > best_v:
                _, _, r = _polar(t, th)
                r = float(r)
                best_v, best_point = rv, DiskPoint.polar(r, th)
                profile.append((r, rv))
        profile.sort(key=lambda p: p[0])

    best_v = max(best_v, 0.0)
    if best_point is None:
        best_point = DiskPoint(0j, 1.0)
    return SupremumResult(float(best_v), best_point, tuple(profile), scheme)


def weighted_derivative(f: HarmonicFunction, alpha, z, zc=None):
    """``(1 - |z|^2)^alpha (|f_z| + |f_zbar|)``; ``zc`` is ``1 - |z|^2`` if known exactly."""
    a = _alpha(alpha)
    z = np.asarray(getattr(z, "value", z), dtype=complex)
    if zc is None:
        m = np.abs(z)
        zc = (1.0 - m) * (1.0 + m)
    return np.power(zc, a) * f.derivative_sum(z)


def seminorm(f: HarmonicFunction, alpha, scheme: Optional[SamplingScheme] = None) -> SupremumResult:
    """``sup_z (1-|z|^2)^alpha (|f_z| + |f_zbar|)``, estimated from below."""
    a = _alpha(alpha)
    with np.errstate(over="ignore", invalid="ignore", under="ignore"):
        return maximize(lambda z, zc: weighted_derivative(f, a, z, zc), scheme)


def norm(f: HarmonicFunction, alpha, scheme: Optional[SamplingScheme] = None) -> float:
    """``|f(0)| + seminorm``."""
    return abs(evaluate(f, 0j)) + seminorm(f, alpha, scheme).value


def aitken_limit(seq) -> float:
    """Aitken delta-squared extrapolation from the last three terms."""
    x0, x1, x2 = (float(v) for v in seq[-3:])
    den = (x2 - x1) - (x1 - x0)
    if den == 0.0 or not np.isfinite(den):
        return x2
    return x2 - (x2 - x1) ** 2 / den


@dataclass(frozen=True)
class LittleBlochProfile:
    radii: tuple
    maxima: tuple
    verdict: bool
    limit_estimate: float


def little_bloch_profile(f: HarmonicFunction, alpha, shells: int, angular: int = 256,
                         threshold: float = 1e-6, window: int = 5) -> LittleBlochProfile:
    """Per-shell maxima of the weighted derivative and a little-Bloch verdict.

    The verdict is true when the last ``window`` maxima strictly decrease and
    either the last one is below ``threshold`` or the Aitken-extrapolated
    limit is below ``threshold`` times the profile maximum.
    """
    if shells < 3:
        raise ParameterDomain("shells must be >= 3")
    a = _alpha(alpha)
    scheme = SamplingScheme(radial_levels=shells, angular_base=angular, refinement_rounds=0)
    s = disk_samples(scheme)
    with np.errstate(over="ignore", invalid="ignore", under="ignore"):
        vals = _clean(weighted_derivative(f, a, s.z, s.complement))
    m = vals.reshape(shells, angular).max(axis=1)
    radii = tuple(float(r) for r in s.radius[::angular])
    scale = float(np.max(m)) if len(m) else 0.0
    if scale == 0.0:
        return LittleBlochProfile(radii, tuple(float(x) for x in m), True, 0.0)
    tail = m[-min(window, shells):]
    decreasing = bool(np.all(np.diff(tail) < 0))
    lim = aitken_limit(m)
    small = tail[-1] <= threshold or abs(lim) <= threshold * scale
    return LittleBlochProfile(radii, tuple(float(x) for x in m), decreasing and bool(small), float(lim))
