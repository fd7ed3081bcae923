import numpy as np
import pytest

from hbloch import (Automorphism, Blaschke, ClosedForm, Composition, Dilation, ParameterDomain, Power,
                    PowerSeries, identity, monomial, rotation)
from hbloch.maps import int_power

from conftest import random_disk_points

MAPS = [
    PowerSeries([0.1, 0.5, 0.25]),
    Dilation(0.7 - 0.2j),
    rotation(1.1),
    Automorphism(0.5),
    Automorphism(-0.3 + 0.4j),
    Blaschke([0.3, -0.5j, 0.2 + 0.6j]),
    Power(Automorphism(0.2j), 5),
    Power(Dilation(0.9), 100),
    Composition(Blaschke([0.4]), PowerSeries([0, 0.5, 0.3])),
    PowerSeries([0.1, 0.5]) * 2.0 - Automorphism(0.1),
]


@pytest.mark.parametrize("m", MAPS, ids=lambda m: m.label[:40])
def test_derivative_matches_central_differences(m, rng):
    z = random_disk_points(rng, 50, 0.9)
    h = 1e-5
    fd = (m.value(z + h) - m.value(z - h)) / (2 * h)
    scale = np.maximum(1.0, np.abs(fd))
    assert np.all(np.abs(m.derivative(z) - fd) / scale < 1e-6)


@pytest.mark.parametrize("m", MAPS, ids=lambda m: m.label[:40])
def test_complement_matches_direct_formula(m, rng):
    z = random_disk_points(rng, 200, 0.9)
    w = m.value(z)
    direct = 1.0 - np.abs(w) ** 2
    assert np.allclose(m.complement(z), direct, atol=1e-13)


def test_automorphism_complement_near_boundary_is_exact():
    a = Automorphism(0.5)
    r = 1.0 - 2.0 ** -45
    zc = (1.0 - r) * (1.0 + r)
    c = a.complement(np.array([r + 0j]), np.array([zc]))[0]
    # (1-|a|^2)(1-r^2)/|1-a r|^2 at z = r
    expected = 0.75 * zc / (1.0 - 0.5 * r) ** 2
    assert c == pytest.approx(expected, rel=1e-14)


def test_automorphism_is_involution(rng):
    a = Automorphism(0.3 - 0.6j)
    z = random_disk_points(rng, 100)
    assert np.allclose(a.value(a.value(z)), z, atol=1e-12)


def test_blaschke_zeros_and_modulus(rng):
    b = Blaschke([0.3, -0.5j])
    assert np.allclose(b.value(np.array([0.3, -0.5j])), 0, atol=1e-15)
    t = np.exp(1j * np.linspace(0, 2 * np.pi, 50))
    assert np.allclose(np.abs(b.value(t)), 1.0, atol=1e-12)


def test_parameter_domains():
    with pytest.raises(ParameterDomain):
        Automorphism(1.0)
    with pytest.raises(ParameterDomain):
        Dilation(1.5)
    with pytest.raises(ParameterDomain):
        Blaschke([0.2, 1.2])
    with pytest.raises(ParameterDomain):
        Power(identity(), 0)
    with pytest.raises(ParameterDomain):
        PowerSeries([])
    with pytest.raises(ParameterDomain):
        PowerSeries(np.ones(5000))


def test_rotation_is_unimodular():
    for th in np.linspace(0, 6, 13):
        d = rotation(th)
        assert d.unimodular
        zc = np.array([1e-30])
        assert d.complement(np.array([0.5]), zc)[0] == 1e-30


def test_int_power_log_domain_matches_direct():
    w = np.array([0.999 * np.exp(0.3j), 0.5j, 0.0, -0.7])
    for k in (65, 200, 1000):
        assert np.allclose(int_power(w, k), w ** k, rtol=1e-12, atol=1e-300)
    assert int_power(np.array([0.0]), 1000)[0] == 0.0


def test_large_power_does_not_overflow():
    p = Power(identity(), 10 ** 6)
    r = 1.0 - 1e-7
    v = p.value(np.array([r + 0j]))[0]
    assert v.real == pytest.approx(np.exp(1e6 * np.log1p(-1e-7)), rel=1e-9)
    d = p.derivative(np.array([r + 0j]))[0]
    assert np.isfinite(d)


def test_monomial_and_closed_form():
    z = np.array([0.3 + 0.1j, -0.5j])
    assert np.allclose(monomial(3).value(z), z ** 3)
    assert np.allclose(monomial(3).derivative(z), 3 * z ** 2)
    f = ClosedForm(lambda z: -np.log1p(-z), lambda z: 1.0 / (1.0 - z), "log")
    assert np.allclose(f.derivative(z), 1 / (1 - z))


def test_composition_order():
    c = Composition(Dilation(0.5), PowerSeries([0.1, 1.0]))
    assert c.value(np.array([0.2]))[0] == pytest.approx(0.5 * 0.3)
    assert identity().compose(Dilation(0.5)).value(np.array([0.4]))[0] == pytest.approx(0.2)
