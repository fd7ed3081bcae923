"""Unit-disk primitives: points, the two disk metrics, and boundary-refined sampling.

Points close to the circle lose precision if ``1 - |z|^2`` is recomputed from
``z``.  Everything here therefore carries the complement ``1 - |z|^2`` next to
the complex value, computed from the exact polar radius when one is known.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator, Optional

import numpy as np

from .errors import OutsideDisk, ParameterDomain, ResourceLimit

__all__ = [
    "DiskPoint",
    "SamplingScheme",
    "DiskSamples",
    "shell_radius",
    "complement_from_radius",
    "pseudo_hyperbolic",
    "hyperbolic",
    "disk_automorphism",
    "disk_samples",
]

# largest pseudo-hyperbolic distance accepted by ``hyperbolic``
RHO_MAX = 1.0 - 1e-15


def shell_radius(j):
    """Radius ``1 - 2**-j`` of the j-th boundary shell (exact in binary)."""
    return 1.0 - np.exp2(-np.asarray(j, dtype=float))


def complement_from_radius(r):
    """``1 - r**2`` evaluated as ``(1 - r)(1 + r)``; exact-ish for r near 1."""
    r = np.asarray(r, dtype=float)
    d = 1.0 - r
    return d * (1.0 + r)


@dataclass(frozen=True)
class DiskPoint:
    """A point of the open unit disk.

    ``complement`` caches ``1 - |value|^2``.  Build points near the boundary
    with :meth:`polar` so the cached complement is taken from the exact radius.
    """

    value: complex
    complement: Optional[float] = field(default=None, compare=False)

    def __post_init__(self):
        v = complex(self.value)
        m = abs(v)
        if not (m < 1.0) or not math.isfinite(m):
            raise OutsideDisk(f"|z| = {m!r} is not < 1")
        object.__setattr__(self, "value", v)
        if self.complement is None:
            object.__setattr__(self, "complement", float((1.0 - m) * (1.0 + m)))

    @classmethod
    def polar(cls, radius: float, angle: float) -> "DiskPoint":
        if not 0.0 <= radius < 1.0:
            raise OutsideDisk(f"radius {radius!r} not in [0, 1)")
        z = radius * complex(math.cos(angle), math.sin(angle))
        return cls(z, float(complement_from_radius(radius)))

    @property
    def radius(self) -> float:
        return abs(self.value)

    def __complex__(self):
        return self.value


def _as_complex(z):
    if isinstance(z, DiskPoint):
        return z.value
    return np.asarray(z, dtype=complex) if not np.isscalar(z) else complex(z)


def pseudo_hyperbolic(z, w):
    """``|z - w| / |1 - conj(z) w|``; accepts DiskPoints, scalars or arrays."""
    z = _as_complex(z)
    w = _as_complex(w)
    num = np.abs(z - w)
    den = np.abs(1.0 - np.conj(z) * w)
    out = num / den
    return float(out) if np.ndim(out) == 0 else out


def _arctanh(x):
    # 1/2 ln((1+x)/(1-x)) written with log1p so tiny x keeps full precision
    x = np.asarray(x, dtype=float)
    return 0.5 * np.log1p(2.0 * x / (1.0 - x))


def hyperbolic(z, w):
    """Hyperbolic distance ``arctanh(rho(z, w))``.

    Raises ParameterDomain when rho is within 1e-15 of 1, where the distance is
    no longer meaningful in double precision.
    """
    rho = np.asarray(pseudo_hyperbolic(z, w))
    if np.any(rho >= RHO_MAX):
        raise ParameterDomain("points too far apart: pseudo-hyperbolic distance >= 1 - 1e-15")
    out = _arctanh(rho)
    return float(out) if out.ndim == 0 else out


def disk_automorphism(a, z):
    """The involutive automorphism ``(a - z) / (1 - conj(a) z)``."""
    a = complex(_as_complex(a))
    z = _as_complex(z)
    return (a - z) / (1.0 - np.conj(a) * z)


@dataclass(frozen=True)
class SamplingScheme:
    """Parameters of the boundary-refined polar sampling.

    Shell j (1..radial_levels) sits at radius ``1 - 2**-j`` and carries
    ``round(angular_base * angular_growth**(j-1))`` equispaced angles.
    ``jitter`` rotates each shell by a seeded fraction of its angular spacing.
    """

    radial_levels: int = 40
    angular_base: int = 64
    angular_growth: float = 1.0
    refinement_rounds: int = 3
    seed: int = 0
    jitter: float = 0.0
    max_points: int = 2_000_000

    def __post_init__(self):
        if int(self.radial_levels) != self.radial_levels or self.radial_levels < 1:
            raise ParameterDomain("radial_levels must be a positive integer")
        if self.radial_levels > 52:
            raise ParameterDomain("radial_levels > 52 collapses shells onto |z| = 1 in double precision")
        if int(self.angular_base) != self.angular_base or self.angular_base < 1:
            raise ParameterDomain("angular_base must be a positive integer")
        if not self.angular_growth > 0:
            raise ParameterDomain("angular_growth must be positive")
        if self.refinement_rounds < 0:
            raise ParameterDomain("refinement_rounds must be non-negative")
        if not 0.0 <= self.jitter < 1.0:
            raise ParameterDomain("jitter must lie in [0, 1)")

    def shell_counts(self):
        j = np.arange(self.radial_levels)
        counts = np.rint(self.angular_base * self.angular_growth ** j).astype(np.int64)
        return np.maximum(counts, 1)

    @property
    def total_points(self) -> int:
        return int(self.shell_counts().sum())

    def with_(self, **changes) -> "SamplingScheme":
        params = {k: getattr(self, k) for k in self.__dataclass_fields__}
        params.update(changes)
        return SamplingScheme(**params)


@dataclass(frozen=True, eq=False)
class DiskSamples:
    """Array view of a sample set; iterating yields DiskPoints in order."""

    radius: np.ndarray
    angle: np.ndarray
    shell: np.ndarray
    z: np.ndarray
    complement: np.ndarray

    def __len__(self):
        return len(self.z)

    def __iter__(self) -> Iterator[DiskPoint]:
        for zv, c in zip(self.z, self.complement):
            yield DiskPoint(complex(zv), float(c))

    def subset(self, mask) -> "DiskSamples":
        mask = np.asarray(mask)
        return DiskSamples(self.radius[mask], self.angle[mask], self.shell[mask],
                           self.z[mask], self.complement[mask])

    def point(self, i) -> DiskPoint:
        return DiskPoint(complex(self.z[i]), float(self.complement[i]))


def disk_samples(scheme: SamplingScheme) -> DiskSamples:
    """Deterministic polar samples on the shells ``1 - 2**-j``, inner shell first."""
    counts = scheme.shell_counts()
    total = int(counts.sum())
    if total > scheme.max_points:
        raise ResourceLimit(f"scheme implies {total} points, cap is {scheme.max_points}")
    rng = np.random.default_rng(scheme.seed)
    offsets = rng.random(scheme.radial_levels) * scheme.jitter
    radii, angles, shells = [], [], []
    for j, (m, off) in enumerate(zip(counts, offsets), start=1):
        theta = 2.0 * np.pi * (np.arange(m) + off) / m
        radii.append(np.full(m, shell_radius(j)))
        angles.append(theta)
        shells.append(np.full(m, j, dtype=np.int64))
    radius = np.concatenate(radii)
    angle = np.concatenate(angles)
    z = radius * np.exp(1j * angle)
    # at depth 52 cos/sin rounding can push |z| onto the circle; pull such points back by an ulp
    out = np.abs(z) >= 1.0
    while np.any(out):
        z[out] *= np.nextafter(1.0, 0.0)
        out = np.abs(z) >= 1.0
    return DiskSamples(radius, angle, np.concatenate(shells), z, complement_from_radius(radius))
