"""Essential-norm estimators for composition operators on harmonic alpha-Bloch spaces.

Three characterisations are evaluated side by side:

* E1, the superlevel-set formula: ``lim_{s->1} sup_{|phi(z)|>s} ratio(z)``;
* E2, the boundary formula: ``limsup_{|z|->1} ratio(z)``;
* E3, the power formula: ``(1/2)(e/2a)^a limsup n^(a-1) ||phi^n + conj(phi)^n||``;

where ``ratio(z) = (1-|z|^2)^a |phi'(z)| / (1-|phi(z)|^2)^a``.  The limits are
replaced by window maxima over geometric ladders and every estimate carries
its trace so convergence can be inspected.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .disk import DiskPoint, SamplingScheme, disk_samples, shell_radius
from .errors import NearBoundarySymbol, ParameterDomain
from .extremal import power_normaliser
from .harmonic import HarmonicFunction, compose, evaluate
from .maps import Power
from .norms import DEFAULT_SCHEME, SupremumResult, _alpha, maximize, norm, seminorm
from .symbols import Symbol

__all__ = [
    "RatioField",
    "ratio_values",
    "ratio_at",
    "bounded_sup",
    "Estimate",
    "essnorm_threshold",
    "essnorm_boundary",
    "power_ladder",
    "power_sequence",
    "essnorm_power",
    "PowerBoundedness",
    "boundedness_power_test",
    "MarginResult",
    "bounded_below_margin",
    "recentered",
    "EssNormReport",
    "essnorm_report",
    "DEFAULT_S_LEVELS",
]

DEFAULT_S_LEVELS = tuple(float(shell_radius(j)) for j in range(1, 21))
NEAR_BOUNDARY = 1e-300
# E3 window-to-window change above this fraction raises "slow-convergence"
SLOW_CONVERGENCE = 0.05


@dataclass(frozen=True)
class RatioField:
    """``z -> (1-|z|^2)^alpha |phi'(z)| / (1-|phi(z)|^2)^alpha``."""

    symbol: Symbol
    alpha: float

    def __post_init__(self):
        object.__setattr__(self, "alpha", _alpha(self.alpha))


def ratio_values(field: RatioField, z, zc=None):
    """Vectorised ratio; ``zc`` is ``1 - |z|^2`` when known exactly."""
    m = field.symbol.map
    z = np.asarray(z, dtype=complex)
    if zc is None:
        r = np.abs(z)
        zc = (1.0 - r) * (1.0 + r)
    c = np.asarray(m.complement(z, zc), dtype=float)
    bad = c < NEAR_BOUNDARY
    if np.any(bad):
        i = int(np.argmax(bad.ravel()))
        w = complex(z.ravel()[i])
        raise NearBoundarySymbol(f"1 - |phi(z)|^2 underflows at z = {w!r}", witness=w)
    return np.power(zc / c, field.alpha) * np.abs(m.derivative(z))


def ratio_at(field: RatioField, z) -> float:
    if not isinstance(z, DiskPoint):
        z = DiskPoint(z)
    return float(ratio_values(field, np.array([z.value]), np.array([z.complement]))[0])


def _shell_maxima(res: SupremumResult):
    radii = set(float(shell_radius(j)) for j in range(1, res.scheme_used.radial_levels + 1))
    return [v for r, v in res.shell_profile if r in radii]


def bounded_sup(field: RatioField, scheme: Optional[SamplingScheme] = None) -> SupremumResult:
    """Supremum of the ratio over the disk; finite means C_phi is bounded.

    Flags ``divergent`` when the last five shell maxima grow strictly by more
    than 1% overall.
    """
    res = maximize(lambda z, zc: ratio_values(field, z, zc), scheme)
    m = _shell_maxima(res)
    flags = ()
    if len(m) >= 5:
        tail = np.array(m[-5:])
        if np.all(np.diff(tail) > 0) and tail[-1] > 1.01 * tail[0]:
            flags = ("divergent",)
    return SupremumResult(res.value, res.witness, res.shell_profile, res.scheme_used, flags)


@dataclass(frozen=True)
class Estimate:
    """A limit estimate with its convergence trace of ``(index, value)`` pairs."""

    value: float
    trace: tuple
    flags: tuple = field(default=())


def _samples_with_origin(scheme):
    s = disk_samples(scheme)
    return np.concatenate([[0j], s.z]), np.concatenate([[1.0], s.complement])


def essnorm_threshold(field: RatioField, s_levels: Optional[Sequence[float]] = None,
                      scheme: Optional[SamplingScheme] = None) -> Estimate:
    """E1: per-level suprema of the ratio over ``{|phi(z)| > s}`` on one shared sample set.

    An empty superlevel set contributes 0, so symbols with ``sup|phi| < 1``
    end at exactly 0.
    """
    levels = np.asarray(DEFAULT_S_LEVELS if s_levels is None else s_levels, dtype=float)
    if levels.ndim != 1 or len(levels) == 0:
        raise ParameterDomain("need at least one s-level")
    if np.any((levels <= 0) | (levels >= 1)) or np.any(np.diff(levels) <= 0):
        raise ParameterDomain("s-levels must increase strictly inside (0, 1)")
    z, zc = _samples_with_origin(scheme or DEFAULT_SCHEME)
    vals = ratio_values(field, z, zc)
    c = field.symbol.map.complement(z, zc)
    trace = []
    empty = False
    for s in levels:
        mask = c < (1.0 - s) * (1.0 + s)
        if np.any(mask):
            trace.append((float(s), float(np.max(vals[mask]))))
        else:
            empty = True
            trace.append((float(s), 0.0))
    flags = []
    if empty:
        flags.append("empty-levels")
    last, prev = trace[-1][1], trace[-2][1] if len(trace) > 1 else None
    if not empty and prev is not None and abs(last - prev) > 1e-3 * last:
        flags.append("no-plateau")
    return Estimate(trace[-1][1], tuple(trace), tuple(flags))


def essnorm_boundary(field: RatioField, shells: int = 40, angular: int = 256) -> Estimate:
    """E2: ratio maxima on the shells ``|z| = 1 - 2**-j``; value is the max over the last three."""
    if shells < 5:
        raise ParameterDomain("shells must be >= 5")
    scheme = SamplingScheme(radial_levels=shells, angular_base=angular, refinement_rounds=0)
    s = disk_samples(scheme)
    vals = ratio_values(field, s.z, s.complement).reshape(shells, angular)
    m = vals.max(axis=1)
    trace = tuple((float(shell_radius(j + 1)), float(v)) for j, v in enumerate(m))
    return Estimate(float(np.max(m[-3:])), trace)


def power_ladder(N: int, start: int = 16):
    """Geometric ladder ``round(start * 2**(k/2))`` up to N, always ending at N."""
    if N < start:
        raise ParameterDomain(f"N must be >= {start}")
    out = []
    k = 0
    while True:
        n = int(round(start * 2 ** (k / 2)))
        if n > N:
            break
        if not out or n != out[-1]:
            out.append(n)
        k += 1
    if out[-1] != N:
        out.append(int(N))
    return out


def power_sequence(phi: Symbol, alpha, ladder, scheme: Optional[SamplingScheme] = None):
    """``[(n, n^(alpha-1) ||phi^n + conj(phi)^n||)]`` along the ladder."""
    a = _alpha(alpha)
    out = []
    for n in ladder:
        p = phi.map if n == 1 else Power(phi.map, n)
        out.append((int(n), n ** (a - 1) * norm(HarmonicFunction(p, p), a, scheme)))
    return out


def essnorm_power(phi: Symbol, alpha, N: int = 2048,
                  scheme: Optional[SamplingScheme] = None) -> Estimate:
    """E3: normalised max of ``n^(alpha-1) ||phi^n + conj(phi)^n||`` over the window [N/2, N]."""
    if N < 16:
        raise ParameterDomain("N must be >= 16")
    a = _alpha(alpha)
    seq = power_sequence(phi, a, power_ladder(N), scheme)
    c = power_normaliser(a)
    window = [v for n, v in seq if n >= N / 2]
    previous = [v for n, v in seq if N / 4 <= n < N / 2]
    e3 = c * max(window)
    flags = []
    if previous:
        e_prev = c * max(previous)
        if abs(e3 - e_prev) > SLOW_CONVERGENCE * max(e3, e_prev, 1e-3):
            flags.append("slow-convergence")
    return Estimate(float(e3), tuple(seq), tuple(flags))


@dataclass(frozen=True)
class PowerBoundedness:
    bounded: bool
    sup_estimate: float
    trace: tuple
    slope: float


def boundedness_power_test(phi: Symbol, alpha, N: int = 2048,
                           scheme: Optional[SamplingScheme] = None,
                           max_slope: float = 0.05) -> PowerBoundedness:
    """Running sup of ``n^(alpha-1) ||phi^n + conj(phi)^n||`` with a log-log growth test.

    Bounded iff the running sup over the upper half of the ladder grows with
    log-log slope at most ``max_slope``.
    """
    if N < 16:
        raise ParameterDomain("N must be >= 16")
    seq = power_sequence(phi, alpha, power_ladder(N), scheme)
    ns = np.array([n for n, _ in seq], dtype=float)
    running = np.maximum.accumulate(np.array([v for _, v in seq]))
    half = len(ns) // 2
    tail_n, tail_v = ns[half:], running[half:]
    if tail_v[0] <= 0.0:
        slope = 0.0
    else:
        slope = float(np.polyfit(np.log(tail_n), np.log(tail_v), 1)[0])
    return PowerBoundedness(bool(slope <= max_slope), float(running[-1]), tuple(seq), slope)


@dataclass(frozen=True)
class MarginResult:
    value: float
    index: int
    function: HarmonicFunction


def recentered(f: HarmonicFunction, phi: Symbol) -> HarmonicFunction:
    """``g = f - f(phi(0))`` so that ``g o phi`` vanishes at 0."""
    w = complex(np.asarray(phi.map.value(np.array([0j])))[0])
    return f.shift(-evaluate(f, w))


def bounded_below_margin(phi: Symbol, alpha, dictionary: Sequence[HarmonicFunction],
                         scheme: Optional[SamplingScheme] = None,
                         seminorm_form: bool = False) -> MarginResult:
    """``min_f ||f o phi|| / ||f||`` over a dictionary, with the minimising entry.

    A value near 0 certifies C_phi is not bounded below; a positive value is
    only evidence.  With ``seminorm_form`` the seminorm replaces the norm on
    both sides.
    """
    if len(dictionary) == 0:
        raise ParameterDomain("dictionary is empty")
    a = _alpha(alpha)
    measure = (lambda f: seminorm(f, a, scheme).value) if seminorm_form else (lambda f: norm(f, a, scheme))
    best, best_i = math.inf, -1
    for i, f in enumerate(dictionary):
        den = measure(f)
        if den <= 0.0:
            raise ParameterDomain(f"dictionary entry {i} has zero {'seminorm' if seminorm_form else 'norm'}")
        q = measure(compose(f, phi)) / den
        if q < best:
            best, best_i = q, i
    return MarginResult(float(best), best_i, dictionary[best_i])


@dataclass(frozen=True)
class EssNormReport:
    E1: Optional[float]
    E2: Optional[float]
    E3: Optional[float]
    traces: dict
    agreement: float
    bounded_sup: Optional[float]
    flags: tuple


def essnorm_report(phi: Symbol, alpha, estimators=("E1", "E2", "E3", "bounded_sup"),
                   N: int = 2048, scheme: Optional[SamplingScheme] = None,
                   shells: Optional[int] = None) -> EssNormReport:
    """Run the requested estimators and collect values, traces and pairwise agreement."""
    scheme = scheme or DEFAULT_SCHEME
    fld = RatioField(phi, alpha)
    vals, traces, flags = {}, {}, []
    if "E1" in estimators:
        e = essnorm_threshold(fld, scheme=scheme)
        vals["E1"], traces["E1"] = e.value, e.trace
        flags += [f"E1:{x}" for x in e.flags]
    if "E2" in estimators:
        e = essnorm_boundary(fld, shells or scheme.radial_levels)
        vals["E2"], traces["E2"] = e.value, e.trace
    if "E3" in estimators:
        e = essnorm_power(phi, alpha, N, scheme)
        vals["E3"], traces["E3"] = e.value, e.trace
        flags += [f"E3:{x}" for x in e.flags]
    bsup = None
    if "bounded_sup" in estimators:
        b = bounded_sup(fld, scheme)
        bsup = b.value
        traces["bounded_sup"] = b.shell_profile
        flags += [f"bounded_sup:{x}" for x in b.flags]
    es = [vals[k] for k in ("E1", "E2", "E3") if k in vals]
    agreement = max((abs(x - y) for x in es for y in es), default=0.0)
    return EssNormReport(vals.get("E1"), vals.get("E2"), vals.get("E3"), traces,
                         float(agreement), bsup, tuple(flags))
