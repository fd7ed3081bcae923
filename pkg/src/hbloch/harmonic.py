"""Harmonic functions ``f = h + conj(g)`` and their derivative data."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .disk import DiskPoint, _as_complex, complement_from_radius, shell_radius
from .errors import ParameterDomain, SelfMapViolation
from .maps import AnalyticMap, Composition, LinearCombination, constant, monomial

__all__ = [
    "HarmonicFunction",
    "evaluate",
    "wirtinger",
    "compose",
    "LipschitzEstimate",
    "lipschitz_number",
]


def _zero():
    return constant(0.0)


@dataclass(frozen=True, eq=False)
class HarmonicFunction:
    """Canonical pair ``(h, g)`` standing for ``f = h + conj(g)``."""

    h: AnalyticMap
    g: AnalyticMap

    @classmethod
    def analytic(cls, h: AnalyticMap) -> "HarmonicFunction":
        return cls(h, _zero())

    @classmethod
    def antianalytic(cls, g: AnalyticMap) -> "HarmonicFunction":
        return cls(_zero(), g)

    @classmethod
    def znbar(cls, n: int) -> "HarmonicFunction":
        """``z**n + conj(z)**n``."""
        m = monomial(n)
        return cls(m, m)

    @classmethod
    def zero(cls) -> "HarmonicFunction":
        return cls(_zero(), _zero())

    def __call__(self, z):
        return evaluate(self, z)

    def __add__(self, other):
        if not isinstance(other, HarmonicFunction):
            return NotImplemented
        return HarmonicFunction(self.h + other.h, self.g + other.g)

    def __sub__(self, other):
        if not isinstance(other, HarmonicFunction):
            return NotImplemented
        return HarmonicFunction(self.h - other.h, self.g - other.g)

    def __mul__(self, c):
        # c * conj(g) = conj(conj(c) * g)
        c = complex(c)
        return HarmonicFunction(LinearCombination(((c, self.h),)),
                                LinearCombination(((c.conjugate(), self.g),)))

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1.0

    def shift(self, c) -> "HarmonicFunction":
        """``f + c`` for a complex constant c (absorbed into h)."""
        return HarmonicFunction(self.h + constant(c), self.g)

    def derivative_sum(self, z):
        """``|f_z| + |f_zbar| = |h'(z)| + |g'(z)|``."""
        return np.abs(self.h.derivative(z)) + np.abs(self.g.derivative(z))

    @property
    def label(self):
        return f"h=[{self.h.label}] g=[{self.g.label}]"


def evaluate(f: HarmonicFunction, z):
    """``h(z) + conj(g(z))``."""
    zz = _as_complex(z)
    out = f.h.value(zz) + np.conj(f.g.value(zz))
    return complex(out) if np.ndim(out) == 0 else out


def wirtinger(f: HarmonicFunction, z):
    """Formal derivatives ``(f_z, f_zbar) = (h'(z), conj(g'(z)))``."""
    zz = _as_complex(z)
    fz = f.h.derivative(zz)
    fzb = np.conj(f.g.derivative(zz))
    if np.ndim(fz) == 0:
        return complex(fz), complex(fzb)
    return fz, fzb


def compose(f: HarmonicFunction, phi) -> HarmonicFunction:
    """``f o phi = h o phi + conj(g o phi)``.

    ``phi`` may be an AnalyticMap or a validated Symbol; plain maps are taken
    on trust, so run them through ``symbols.make_symbol`` when their self-map
    property is in doubt.
    """
    m = getattr(phi, "map", phi)
    if not isinstance(m, AnalyticMap):
        raise ParameterDomain("compose expects an AnalyticMap or Symbol")
    if getattr(phi, "validated", True) is False:
        raise SelfMapViolation("symbol failed self-map validation")
    return HarmonicFunction(Composition(f.h, m), Composition(f.g, m))


@dataclass(frozen=True)
class LipschitzEstimate:
    value: float
    pair: Optional[tuple]
    pairs_used: int


def _pair_distance(z, zc, w):
    # rho(z, w) with 1 - conj(z) w rewritten as (1 - |z|^2) - conj(z)(w - z)
    d = w - z
    return np.abs(d) / np.abs(zc - np.conj(z) * d)


def _local_pairs(rng, m, depth):
    # base point: half uniform by area, half pushed toward the circle
    u = rng.random(m)
    r = np.where(u < 0.5, np.sqrt(rng.random(m)), shell_radius(rng.random(m) * depth))
    zc = complement_from_radius(r)
    z = r * np.exp(2j * np.pi * rng.random(m))
    # partner at pseudo-hyperbolic distance ~t; the exact distance is recomputed below
    t = np.exp(rng.uniform(np.log(1e-6), np.log(0.95), m))
    v = t * np.exp(2j * np.pi * rng.random(m))
    w = (z + v) / (1.0 + np.conj(z) * v)
    return z, w, _pair_distance(z, zc, w)


def _shell_interior_pairs(rng, m, depth):
    j = rng.integers(1, depth + 1, m)
    r = shell_radius(j)
    z = r * np.exp(2j * np.pi * rng.random(m))
    w = np.sqrt(rng.random(m)) * 0.999 * np.exp(2j * np.pi * rng.random(m))
    return z, w, _pair_distance(z, complement_from_radius(r), w)


def lipschitz_number(f: HarmonicFunction, pair_budget: int, seed: int = 0,
                     depth: int = 20, chunk: int = 200_000) -> LipschitzEstimate:
    """Sampled lower estimate of ``sup |f(z) - f(w)| / hyperbolic(z, w)``.

    Three quarters of the budget goes to close pairs (partner at
    pseudo-hyperbolic distance log-uniform in [1e-6, 0.95]), the rest to
    boundary-shell/interior pairs.  Base points stay within ``depth`` shells of
    the circle and pairs closer than 1e-9 are dropped, which bounds the
    rounding error in each quotient well below 1e-6.  Seeded, so scaled copies of f see
    identical pairs.
    """
    if pair_budget < 1:
        raise ParameterDomain("pair_budget must be >= 1")
    rng = np.random.default_rng(seed)
    n_local = (3 * pair_budget) // 4
    n_far = pair_budget - n_local
    best, best_pair = 0.0, None
    for kind, total in (("local", n_local), ("far", n_far)):
        done = 0
        while done < total:
            m = min(chunk, total - done)
            done += m
            if kind == "local":
                z, w, t = _local_pairs(rng, m, depth)
            else:
                z, w, t = _shell_interior_pairs(rng, m, depth)
            keep = (np.abs(w - z) > 1e-9) & (t < 1 - 1e-15) & (np.abs(w) < 1.0)
            dist = 0.5 * np.log1p(2 * t / (1 - t))
            diff = np.abs(evaluate(f, z) - evaluate(f, w))
            q = np.where(keep, diff / np.where(keep, dist, 1.0), 0.0)
            i = int(np.argmax(q))
            if q[i] > best:
                best = float(q[i])
                best_pair = (DiskPoint(complex(z[i])), DiskPoint(complex(w[i])))
    return LipschitzEstimate(best, best_pair, pair_budget)
