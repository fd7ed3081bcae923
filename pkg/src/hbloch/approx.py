"""Dilation operators ``K_r``, their averages ``L_n``, and the bounds built from them.

The radii schedule is fixed at ``r_k = 1 - 2**-k``.  Operator norms over the
unit ball are replaced by maxima over finite dictionaries, so the quantities
here are surrogates: ``empirical_upper_bound`` is a lower estimate of
``||C_phi (I - L_n)||`` and is reported with a ``dictionary-surrogate`` flag.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .disk import SamplingScheme, shell_radius
from .errors import ParameterDomain
from .essnorm import Estimate, RatioField, essnorm_threshold, power_ladder
from .harmonic import HarmonicFunction, compose
from .maps import AnalyticMap, Composition, Dilation, LinearCombination, Power, PowerSeries
from .norms import _alpha, norm
from .symbols import Symbol, weak_null_function

__all__ = [
    "DilationOperator",
    "AveragedApproximant",
    "default_schedule",
    "apply_Kr",
    "apply_Ln",
    "residual",
    "residual_norm",
    "random_polynomial_harmonics",
    "default_dictionary",
    "UpperIndicator",
    "empirical_upper_bound",
    "weak_null_lower_bound",
    "sandwich_ladder_max",
    "Sandwich",
    "sandwich",
]


@dataclass(frozen=True)
class DilationOperator:
    """``K_r f(z) = f(r z)``."""

    r: float

    def __post_init__(self):
        if not 0.0 < self.r < 1.0:
            raise ParameterDomain("dilation radius must lie in (0, 1)")

    def __call__(self, f):
        return apply_Kr(self, f)


def default_schedule(n: int):
    return tuple(float(shell_radius(k)) for k in range(1, n + 1))


@dataclass(frozen=True)
class AveragedApproximant:
    """``L_n = (1/n) sum_k K_{r_k}``."""

    radii: tuple

    def __post_init__(self):
        r = tuple(float(x) for x in self.radii)
        if not r:
            raise ParameterDomain("need at least one radius")
        if any(not 0.0 < x < 1.0 for x in r):
            raise ParameterDomain("radii must lie in (0, 1)")
        if any(b <= a for a, b in zip(r, r[1:])):
            raise ParameterDomain("radii must increase")
        object.__setattr__(self, "radii", r)

    @classmethod
    def standard(cls, n: int) -> "AveragedApproximant":
        return cls(default_schedule(n))

    @property
    def n(self) -> int:
        return len(self.radii)

    def __call__(self, f):
        return apply_Ln(self, f)


def _monomial_degree(m: AnalyticMap):
    """n if ``m`` is ``z**n`` in one of the forms the package builds, else None."""
    if isinstance(m, Dilation) and m.s == 1:
        return 1
    if isinstance(m, Power) and isinstance(m.base, Dilation) and m.base.s == 1:
        return m.n
    return None


def _log_radii(radii):
    # log r_k without cancellation when r_k = 1 - 2**-k
    r = np.asarray(radii, dtype=float)
    return np.log1p(-(1.0 - r))


def _average_factor(radii, k, complement=False):
    """``mean_j r_j**k`` or, with ``complement``, ``mean_j (1 - r_j**k)``, for integer arrays k."""
    lr = _log_radii(radii)
    k = np.asarray(k, dtype=float)
    e = np.outer(k, lr)
    vals = -np.expm1(e) if complement else np.exp(e)
    return vals.mean(axis=1)


def _averaged_map(m: AnalyticMap, radii, complement=False) -> AnalyticMap:
    """``mean_j m(r_j z)`` (or ``m - mean_j m(r_j z)``) with dilations folded in when possible."""
    if isinstance(m, LinearCombination):
        return LinearCombination([(c, _averaged_map(t, radii, complement)) for c, t in m.terms])
    if isinstance(m, PowerSeries):
        k = np.arange(len(m.coeffs))
        return PowerSeries(m.coeffs * _average_factor(radii, k, complement))
    n = _monomial_degree(m)
    if n is not None:
        return LinearCombination(((complex(_average_factor(radii, [n], complement)[0]), m),))
    w = 1.0 / len(radii)
    avg = LinearCombination([(w, Composition(m, Dilation(r))) for r in radii])
    return m - avg if complement else avg


def apply_Kr(K: DilationOperator, f: HarmonicFunction) -> HarmonicFunction:
    return HarmonicFunction(_averaged_map(f.h, (K.r,)), _averaged_map(f.g, (K.r,)))


def apply_Ln(L: AveragedApproximant, f: HarmonicFunction) -> HarmonicFunction:
    return HarmonicFunction(_averaged_map(f.h, L.radii), _averaged_map(f.g, L.radii))


def residual(L: AveragedApproximant, f: HarmonicFunction) -> HarmonicFunction:
    """``(I - L_n) f``; power series and monomials get exact coefficients ``1 - mean r_j^k``."""
    return HarmonicFunction(_averaged_map(f.h, L.radii, True), _averaged_map(f.g, L.radii, True))


def residual_norm(L: AveragedApproximant, f: HarmonicFunction, alpha,
                  scheme: Optional[SamplingScheme] = None) -> float:
    return norm(residual(L, f), alpha, scheme)


def random_polynomial_harmonics(count: int, alpha, degree: int = 32, seed: int = 0,
                                scheme: Optional[SamplingScheme] = None, normalise: bool = True):
    """Seeded random ``h + conj(g)`` with h, g polynomials of degree <= ``degree``.

    Coefficients decay like ``1/(k+1)`` so no single top-degree term
    dominates; with ``normalise`` each function is scaled to unit norm.
    """
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        deg = int(rng.integers(1, degree + 1))
        decay = 1.0 / np.arange(1, deg + 2)
        ch = (rng.standard_normal(deg + 1) + 1j * rng.standard_normal(deg + 1)) * decay
        cg = (rng.standard_normal(deg + 1) + 1j * rng.standard_normal(deg + 1)) * decay
        cg[0] = 0.0
        f = HarmonicFunction(PowerSeries(ch), PowerSeries(cg))
        if normalise:
            s = 1.0 / norm(f, alpha, scheme)
            f = HarmonicFunction(PowerSeries(ch * s), PowerSeries(cg * s))
        out.append(f)
    return out


def default_dictionary(alpha, n_max: int = 2048, n_random: int = 50, degree: int = 32,
                       seed: int = 0, scheme: Optional[SamplingScheme] = None):
    """Unit-norm weak-null functions on the power ladder plus seeded random polynomials."""
    a = _alpha(alpha)
    weak = [weak_null_function(n, a) for n in power_ladder(n_max)]
    return weak + random_polynomial_harmonics(n_random, a, degree, seed, scheme)


@dataclass(frozen=True)
class UpperIndicator:
    value: float
    argmax: int
    trace: tuple
    flags: tuple = field(default=("dictionary-surrogate",))


def empirical_upper_bound(phi: Symbol, alpha, L: AveragedApproximant,
                          dictionary: Sequence[HarmonicFunction],
                          scheme: Optional[SamplingScheme] = None) -> UpperIndicator:
    """``max_f ||C_phi (I - L_n) f||`` over a unit-norm dictionary.

    The true operator norm dominates this value; it is an upper-bound
    indicator for the essential norm, not a certificate.
    """
    if len(dictionary) == 0:
        raise ParameterDomain("dictionary is empty")
    a = _alpha(alpha)
    vals = [norm(compose(residual(L, f), phi), a, scheme) for f in dictionary]
    i = int(np.argmax(vals))
    return UpperIndicator(float(vals[i]), i, tuple(enumerate(vals)))


def weak_null_lower_bound(phi: Symbol, alpha, N: int = 2048,
                          scheme: Optional[SamplingScheme] = None) -> Estimate:
    """``||C_phi f_n||`` for the normalised ``z^n + conj(z)^n`` on the ladder; value is the [N/2, N] max."""
    if N < 16:
        raise ParameterDomain("N must be >= 16")
    a = _alpha(alpha)
    trace = []
    for n in power_ladder(N):
        trace.append((n, norm(compose(weak_null_function(n, a), phi), a, scheme)))
    window = [v for n, v in trace if n >= N / 2]
    return Estimate(float(max(window)), tuple(trace))


def sandwich_ladder_max(L: AveragedApproximant, extra: int = 6) -> int:
    """Largest dictionary power that ``I - L_n`` does not damp.

    ``f_m(r_k z)`` only differs from ``f_m`` once ``m`` is of order
    ``2**k``, so weak-null functions must reach past ``2**n`` before the
    residual ``(I - L_n) f_m`` recovers unit size.
    """
    return 2 ** (L.n + extra)


@dataclass(frozen=True)
class Sandwich:
    lower: Estimate
    upper: UpperIndicator
    E1: float
    contraction_gap: float

    @property
    def coherent(self) -> bool:
        return (self.lower.value <= self.E1 + 0.02
                and self.lower.value <= self.upper.value + 0.05
                and self.contraction_gap <= 1e-12)


def sandwich(phi: Symbol, alpha, n: int = 16, N: int = 2048,
             scheme: Optional[SamplingScheme] = None, n_random: int = 50, seed: int = 0) -> Sandwich:
    """Lower bound, upper-bound indicator, and E1 side by side.

    ``contraction_gap`` is the largest ``norm(K_r f) - norm(f)`` seen over the
    random part of the dictionary and the schedule radii.
    """
    a = _alpha(alpha)
    L = AveragedApproximant.standard(n)
    lower = weak_null_lower_bound(phi, a, N, scheme)
    rand = random_polynomial_harmonics(n_random, a, seed=seed, scheme=scheme)
    weak = [weak_null_function(m, a) for m in power_ladder(sandwich_ladder_max(L))]
    upper = empirical_upper_bound(phi, a, L, weak + rand, scheme)
    gap = -np.inf
    for f in rand[:10]:
        nf = norm(f, a, scheme)
        for r in (0.5, 0.9, 0.99):
            gap = max(gap, norm(apply_Kr(DilationOperator(r), f), a, scheme) - nf)
    e1 = essnorm_threshold(RatioField(phi, a)).value
    return Sandwich(lower, upper, float(e1), float(gap))
