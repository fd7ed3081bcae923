"""Analytic maps on the disk with closed-form derivatives.

Every map supplies ``value``, ``derivative`` and ``complement``; the last one
returns ``1 - |value(z)|^2`` and, where an algebraic identity exists, uses the
caller's ``1 - |z|^2`` instead of recomputing it from ``|value|``.  That keeps
quotients such as ``(1-|z|^2)|phi'| / (1-|phi|^2)`` accurate within 1e-12 of
the circle.
"""

from __future__ import annotations

import numpy as np

from .errors import ParameterDomain

__all__ = [
    "AnalyticMap",
    "PowerSeries",
    "Dilation",
    "Automorphism",
    "Blaschke",
    "Power",
    "Composition",
    "LinearCombination",
    "ClosedForm",
    "identity",
    "rotation",
    "monomial",
    "constant",
    "int_power",
    "MAX_COEFFICIENTS",
    "LOG_DOMAIN_POWER",
]

MAX_COEFFICIENTS = 4096
# integer powers above this exponent go through exp(k log w)
LOG_DOMAIN_POWER = 64


def int_power(w, k: int):
    """``w**k`` for integer ``k >= 0``; log-domain when k is large so tiny moduli underflow to 0 cleanly."""
    if k == 0:
        return np.ones_like(w)
    if k <= LOG_DOMAIN_POWER:
        return w ** k
    w = np.asarray(w, dtype=complex)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore", under="ignore"):
        out = np.exp(k * np.log(w))
    return np.where(w == 0, 0.0, out)


def _complement_of(w):
    m = np.abs(w)
    return (1.0 - m) * (1.0 + m)


def _input_complement(z, zc):
    return _complement_of(z) if zc is None else zc


class AnalyticMap:
    """Base class.  Subclasses implement ``value`` and ``derivative``."""

    label = "map"

    def value(self, z):
        raise NotImplementedError

    def derivative(self, z):
        raise NotImplementedError

    def complement(self, z, zc=None):
        """``1 - |value(z)|^2``; ``zc`` is ``1 - |z|^2`` if the caller knows it exactly."""
        return _complement_of(self.value(z))

    def __call__(self, z):
        return self.value(z)

    def compose(self, inner: "AnalyticMap") -> "Composition":
        """The map ``self o inner``."""
        return Composition(self, inner)

    def power(self, n: int) -> "Power":
        return Power(self, n)

    def __mul__(self, c):
        if isinstance(c, AnalyticMap):
            return NotImplemented
        return LinearCombination(((complex(c), self),))

    __rmul__ = __mul__

    def __add__(self, other):
        if not isinstance(other, AnalyticMap):
            return NotImplemented
        return LinearCombination(((1.0, self), (1.0, other)))

    def __sub__(self, other):
        if not isinstance(other, AnalyticMap):
            return NotImplemented
        return LinearCombination(((1.0, self), (-1.0, other)))

    def __neg__(self):
        return LinearCombination(((-1.0, self),))

    def __repr__(self):
        return f"<{type(self).__name__} {self.label}>"


class PowerSeries(AnalyticMap):
    """Finite power series ``sum_k c_k z^k`` (at most MAX_COEFFICIENTS terms)."""

    def __init__(self, coeffs):
        c = np.atleast_1d(np.asarray(coeffs, dtype=complex))
        if c.ndim != 1 or len(c) == 0:
            raise ParameterDomain("coefficient list must be a non-empty sequence")
        if len(c) > MAX_COEFFICIENTS:
            raise ParameterDomain(f"more than {MAX_COEFFICIENTS} coefficients")
        if not np.all(np.isfinite(c)):
            raise ParameterDomain("coefficients must be finite")
        self.coeffs = c
        self._dcoeffs = c[1:] * np.arange(1, len(c)) if len(c) > 1 else np.zeros(1, complex)
        self.label = f"poly coeffs={_fmt_list(c)}"

    def value(self, z):
        return np.polynomial.polynomial.polyval(z, self.coeffs)

    def derivative(self, z):
        return np.polynomial.polynomial.polyval(z, self._dcoeffs)


class Dilation(AnalyticMap):
    """``z -> s z`` with ``|s| <= 1``; ``|s| = 1`` is a rotation, ``s = 1`` the identity."""

    def __init__(self, s):
        s = complex(s)
        if not abs(s) <= 1.0 + 1e-15:
            raise ParameterDomain(f"dilation factor |s| = {abs(s)} exceeds 1")
        self.unimodular = abs(abs(s) - 1.0) <= 1e-15
        self.s = s
        if s == 1:
            self.label = "identity"
        elif abs(s) == 1.0:
            self.label = f"rotation theta={_fmt(np.angle(s))}"
        else:
            self.label = f"dilation s={_fmt(s)}"

    def value(self, z):
        return self.s * np.asarray(z)

    def derivative(self, z):
        return np.full(np.shape(z), self.s, dtype=complex)

    def complement(self, z, zc=None):
        zc = _input_complement(z, zc)
        if self.unimodular:
            return np.asarray(zc, dtype=float)
        m = abs(self.s)
        return (1.0 - m) * (1.0 + m) + m * m * np.asarray(zc)


def identity() -> Dilation:
    return Dilation(1.0)


def rotation(theta: float) -> Dilation:
    return Dilation(complex(np.cos(theta), np.sin(theta)))


class Automorphism(AnalyticMap):
    """The involution ``(a - z) / (1 - conj(a) z)`` swapping 0 and ``a``."""

    def __init__(self, a):
        a = complex(a)
        if not abs(a) < 1.0:
            raise ParameterDomain(f"automorphism parameter |a| = {abs(a)} must be < 1")
        self.a = a
        m = abs(a)
        self._ca = (1.0 - m) * (1.0 + m)
        self.label = f"automorphism a={_fmt(a)}"

    def value(self, z):
        z = np.asarray(z)
        return (self.a - z) / (1.0 - np.conj(self.a) * z)

    def derivative(self, z):
        z = np.asarray(z)
        return -self._ca / (1.0 - np.conj(self.a) * z) ** 2

    def complement(self, z, zc=None):
        zc = _input_complement(z, zc)
        den = np.abs(1.0 - np.conj(self.a) * np.asarray(z)) ** 2
        return self._ca * zc / den


class Blaschke(AnalyticMap):
    """Finite Blaschke product ``prod_k (z - a_k) / (1 - conj(a_k) z)``."""

    def __init__(self, zeros):
        zs = np.atleast_1d(np.asarray(zeros, dtype=complex))
        if zs.ndim != 1 or len(zs) == 0:
            raise ParameterDomain("Blaschke product needs at least one zero")
        if not np.all(np.abs(zs) < 1.0):
            raise ParameterDomain("Blaschke zeros must lie in the open disk")
        self.zeros = zs
        m = np.abs(zs)
        self._ca = (1.0 - m) * (1.0 + m)
        self.label = f"blaschke zeros={_fmt_list(zs)}"

    def _factors(self, z):
        z = np.asarray(z, dtype=complex)
        den = 1.0 - np.conj(self.zeros)[:, None] * z.reshape(1, -1)
        b = (z.reshape(1, -1) - self.zeros[:, None]) / den
        db = self._ca[:, None] / den ** 2
        return z, b, db, den

    def value(self, z):
        z, b, _, _ = self._factors(z)
        return np.prod(b, axis=0).reshape(z.shape)

    def derivative(self, z):
        z, b, db, _ = self._factors(z)
        k = b.shape[0]
        ones = np.ones((1, b.shape[1]), dtype=complex)
        prefix = np.cumprod(np.vstack([ones, b[:-1]]), axis=0)
        suffix = np.cumprod(np.vstack([ones, b[::-1][:-1]]), axis=0)[::-1]
        out = np.sum(db * prefix * suffix, axis=0) if k > 1 else db[0]
        return out.reshape(z.shape)

    def complement(self, z, zc=None):
        z, b, _, den = self._factors(z)
        zc = np.broadcast_to(_input_complement(z, zc), z.shape).reshape(1, -1)
        fc = self._ca[:, None] * zc / np.abs(den) ** 2
        # 1 - |P b|^2 = (1 - |P|^2) + |P|^2 (1 - |b|^2), accumulated factor by factor
        c = fc[0]
        p2 = np.abs(b[0]) ** 2
        for j in range(1, b.shape[0]):
            c = c + p2 * fc[j]
            p2 = p2 * np.abs(b[j]) ** 2
        return c.reshape(z.shape)


class Power(AnalyticMap):
    """``z -> base(z)**n``."""

    def __init__(self, base: AnalyticMap, n: int):
        if int(n) != n or n < 1:
            raise ParameterDomain("power exponent must be a positive integer")
        self.base = base
        self.n = int(n)
        self.label = f"({base.label})^{self.n}"

    def value(self, z):
        return int_power(self.base.value(z), self.n)

    def derivative(self, z):
        w = self.base.value(z)
        return self.n * int_power(w, self.n - 1) * self.base.derivative(z)

    def complement(self, z, zc=None):
        c = np.asarray(self.base.complement(z, zc), dtype=float)
        with np.errstate(divide="ignore"):
            return -np.expm1(self.n * np.log1p(-c))


class Composition(AnalyticMap):
    """``outer o inner``."""

    def __init__(self, outer: AnalyticMap, inner: AnalyticMap):
        self.outer = outer
        self.inner = inner
        self.label = f"{outer.label} o {inner.label}"

    def value(self, z):
        return self.outer.value(self.inner.value(z))

    def derivative(self, z):
        return self.outer.derivative(self.inner.value(z)) * self.inner.derivative(z)

    def complement(self, z, zc=None):
        w = self.inner.value(z)
        return self.outer.complement(w, self.inner.complement(z, zc))


class LinearCombination(AnalyticMap):
    """``sum_k c_k m_k(z)``."""

    def __init__(self, terms):
        flat = []
        for c, m in terms:
            if isinstance(m, LinearCombination):
                flat.extend((complex(c) * c2, m2) for c2, m2 in m.terms)
            else:
                flat.append((complex(c), m))
        self.terms = tuple(flat)
        self.label = " + ".join(f"{_fmt(c)}*[{m.label}]" for c, m in self.terms) or "0"

    def value(self, z):
        out = np.zeros(np.shape(z), dtype=complex)
        for c, m in self.terms:
            out = out + c * m.value(z)
        return out

    def derivative(self, z):
        out = np.zeros(np.shape(z), dtype=complex)
        for c, m in self.terms:
            out = out + c * m.derivative(z)
        return out


class ClosedForm(AnalyticMap):
    """A map given by user callables for value and derivative (both vectorised)."""

    def __init__(self, value, derivative, label="closed-form"):
        self._value = value
        self._derivative = derivative
        self.label = label

    def value(self, z):
        return np.asarray(self._value(np.asarray(z, dtype=complex)), dtype=complex)

    def derivative(self, z):
        return np.asarray(self._derivative(np.asarray(z, dtype=complex)), dtype=complex)


def monomial(n: int) -> AnalyticMap:
    """``z**n``; large n stays cheap because no coefficient array is built."""
    return identity() if n == 1 else Power(identity(), n)


def constant(c) -> PowerSeries:
    return PowerSeries([c])


def _fmt(x):
    x = complex(x)
    if x.imag == 0:
        return repr(float(x.real))
    return f"{x.real!r}{x.imag:+}i"


def _fmt_list(xs):
    return "[" + ", ".join(_fmt(x) for x in xs) + "]"
