"""Analytic self-maps of the disk (symbols), their powers, and the annuli preimages.

Symbol spec grammar, as used by the CLI and config files::

    identity
    rotation theta=0.3
    dilation s=0.9
    automorphism a=0.5+0i
    blaschke zeros=[0.3, -0.5i]
    poly coeffs=[0, 0.5, 0.25]
    <spec> o <spec>          composition, left applied last
    <spec> ^ 3               integer power
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .disk import DiskSamples, SamplingScheme, disk_samples
from .errors import ConfigParse, ParameterDomain, SelfMapViolation
from .extremal import maximiser, znbar_norm
from .harmonic import HarmonicFunction
from .maps import (AnalyticMap, Automorphism, Blaschke, Composition, Dilation, Power,
                   PowerSeries, identity, rotation)

__all__ = [
    "Symbol",
    "FAMILIES",
    "VALIDATION_SCHEME",
    "make_symbol",
    "validate_map",
    "parse_symbol",
    "parse_map",
    "symbol_power",
    "AnnulusBand",
    "annulus_band",
    "band_mask",
    "smallest_band_index",
    "weak_null_function",
]

FAMILIES = ("dilation", "rotation", "automorphism", "blaschke", "polynomial", "composite")
VALIDATION_SCHEME = SamplingScheme(radial_levels=40, angular_base=512, refinement_rounds=0)


@dataclass(frozen=True, eq=False)
class Symbol:
    """A validated analytic self-map of the disk."""

    map: AnalyticMap
    sup_modulus_estimate: float
    family_tag: str
    label: str
    min_modulus_estimate: float = 0.0
    validated: bool = True

    def __call__(self, z):
        return self.map.value(z)


def validate_map(m: AnalyticMap, family_tag: str = "composite", label: Optional[str] = None,
                 scheme: SamplingScheme = VALIDATION_SCHEME) -> Symbol:
    """Sample ``|m|`` on the boundary shells; reject if any sample reaches 1.

    By the maximum modulus principle the outermost shell certifies the
    interior it encloses.
    """
    if family_tag not in FAMILIES:
        raise ParameterDomain(f"unknown family tag {family_tag!r}")
    s = disk_samples(scheme)
    z = np.concatenate([[0j], s.z])
    with np.errstate(all="ignore"):
        mod = np.abs(m.value(z))
    if not np.all(np.isfinite(mod)):
        i = int(np.argmax(~np.isfinite(mod)))
        raise SelfMapViolation("map is not finite on the disk", witness=complex(z[i]))
    i = int(np.argmax(mod))
    if mod[i] >= 1.0:
        raise SelfMapViolation(
            f"|phi(z)| = {float(mod[i])!r} >= 1 at z = {complex(z[i])!r}; not a self-map of the disk",
            witness=complex(z[i]), modulus=float(mod[i]))
    return Symbol(m, float(mod[i]), family_tag, label or m.label, float(np.min(mod)))


_FAMILY_ALIASES = {
    "identity": "identity", "id": "identity",
    "rotation": "rotation", "dilation": "dilation",
    "automorphism": "automorphism", "mobius": "automorphism",
    "blaschke": "blaschke",
    "poly": "polynomial", "polynomial": "polynomial",
}


def _build_map(family: str, params: dict):
    fam = _FAMILY_ALIASES.get(family)
    if fam is None:
        raise ParameterDomain(f"unknown symbol family {family!r}")
    try:
        if fam == "identity":
            return identity(), "rotation"
        if fam == "rotation":
            return rotation(float(params["theta"])), "rotation"
        if fam == "dilation":
            s = complex(params["s"])
            if abs(s) > 1.0 + 1e-15:
                raise SelfMapViolation(f"z -> s z with |s| = {abs(s)} > 1 is not a self-map of the disk")
            d = Dilation(s)
            return d, "rotation" if d.unimodular else "dilation"
        if fam == "automorphism":
            return Automorphism(params["a"]), "automorphism"
        if fam == "blaschke":
            return Blaschke(params["zeros"]), "blaschke"
        return PowerSeries(params["coeffs"]), "polynomial"
    except KeyError as exc:
        raise ParameterDomain(f"family {family!r} is missing parameter {exc.args[0]!r}") from None


def make_symbol(family: str, scheme: SamplingScheme = VALIDATION_SCHEME, **params) -> Symbol:
    """Build and validate a symbol, e.g. ``make_symbol("automorphism", a=0.5)``."""
    m, tag = _build_map(family, params)
    return validate_map(m, tag, m.label, scheme)


# ---- spec grammar -----------------------------------------------------------

_PARAM = re.compile(r"(\w+)\s*=\s*(\[[^\]]*\]|[^\s\[\]]+)")


def _complex(text: str) -> complex:
    t = text.strip().replace(" ", "")
    if re.search(r"[a-hk-z]", t.lower().replace("e", "")):
        raise ConfigParse(f"not a number: {text!r}")
    t = t.replace("i", "j").replace("I", "j")
    try:
        return complex(t)
    except ValueError:
        raise ConfigParse(f"not a number: {text!r}") from None


def _value(text: str):
    text = text.strip()
    if text.startswith("["):
        body = text[1:-1].strip()
        return [_complex(x) for x in body.split(",")] if body else []
    return _complex(text)


def _parse_atom(text: str):
    text = text.strip()
    m = re.match(r"([A-Za-z_]+)(.*)$", text)
    if not m:
        raise ConfigParse(f"cannot parse symbol spec {text!r}")
    family, rest = m.group(1).lower(), m.group(2)
    params = {k: _value(v) for k, v in _PARAM.findall(rest)}
    leftover = _PARAM.sub("", rest).strip()
    if leftover:
        raise ConfigParse(f"unexpected text {leftover!r} in {text!r}")
    if "theta" in params:
        th = params["theta"]
        if not isinstance(th, complex) or th.imag != 0:
            raise ConfigParse("theta must be a real number")
        params["theta"] = th.real
    try:
        return _build_map(family, params)
    except ParameterDomain as exc:
        raise ConfigParse(str(exc)) from None


def _parse_factor(text: str):
    parts = text.split("^")
    if len(parts) > 2:
        raise ConfigParse(f"nested powers are not supported: {text!r}")
    m, tag = _parse_atom(parts[0])
    if len(parts) == 2:
        try:
            n = int(parts[1].strip())
        except ValueError:
            raise ConfigParse(f"bad exponent in {text!r}") from None
        if n < 1:
            raise ConfigParse("exponent must be >= 1")
        m, tag = (m, tag) if n == 1 else (Power(m, n), "composite")
    return m, tag


def parse_map(text: str):
    """Parse the grammar into ``(AnalyticMap, family_tag)`` without self-map validation."""
    if not text or not text.strip():
        raise ConfigParse("empty symbol spec")
    pieces = re.split(r"\s+o\s+", text.strip())
    maps = [_parse_factor(p) for p in pieces]
    m, tag = maps[-1]
    for outer, _ in reversed(maps[:-1]):
        m = Composition(outer, m)
    return m, (tag if len(maps) == 1 else "composite")


def parse_symbol(text: str, scheme: SamplingScheme = VALIDATION_SCHEME) -> Symbol:
    m, tag = parse_map(text)
    return validate_map(m, tag, " ".join(text.split()), scheme)


# ---- powers and bands -------------------------------------------------------

def symbol_power(phi: Symbol, n: int) -> Symbol:
    """The symbol ``z -> phi(z)**n``."""
    if int(n) != n or n < 1:
        raise ParameterDomain("n must be a positive integer")
    if n == 1:
        return phi
    return Symbol(Power(phi.map, int(n)), phi.sup_modulus_estimate ** n, "composite",
                  f"{phi.label} ^ {int(n)}", phi.min_modulus_estimate ** n)


@dataclass(frozen=True)
class AnnulusBand:
    """Radii ``r_n <= |w| <= r_{n+1}`` of the n-th extremal band for weight alpha."""

    n: int
    inner: float
    outer: float
    alpha: float

    def __post_init__(self):
        if not 0.0 <= self.inner < self.outer < 1.0:
            raise ParameterDomain("band radii must satisfy 0 <= inner < outer < 1")

    @property
    def complement_bounds(self):
        """``(1 - outer^2, 1 - inner^2)`` from the exact rational forms."""
        a = self.alpha
        lo = 2 * a / (self.n + 2 * a)
        hi = 1.0 if self.n == 1 else 2 * a / (self.n - 1 + 2 * a)
        return lo, hi


def annulus_band(n: int, alpha: float) -> AnnulusBand:
    return AnnulusBand(int(n), maximiser(n, alpha), maximiser(n + 1, alpha), float(alpha))


def band_mask(phi: Symbol, band: AnnulusBand, samples: DiskSamples) -> DiskSamples:
    """Samples z with ``r_n <= |phi(z)| <= r_{n+1}``, compared through ``1 - |phi|^2``."""
    lo, hi = band.complement_bounds
    c = phi.map.complement(samples.z, samples.complement)
    return samples.subset((c >= lo) & (c <= hi))


def smallest_band_index(phi: Symbol, alpha: float) -> int:
    """Smallest n whose band meets the (sampled) range of ``|phi|``."""
    n = 1
    while maximiser(n + 1, alpha) < phi.min_modulus_estimate:
        n += 1
    return n


def weak_null_function(n: int, alpha: float) -> HarmonicFunction:
    """``(z^n + conj(z)^n) / ||z^n + conj(z)^n||``, a unit vector tending weakly to 0."""
    return HarmonicFunction.znbar(n) * (1.0 / znbar_norm(n, alpha))
