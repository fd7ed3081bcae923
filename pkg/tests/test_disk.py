import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hbloch import (DiskPoint, OutsideDisk, ParameterDomain, ResourceLimit, SamplingScheme,
                    disk_automorphism, disk_samples, hyperbolic, pseudo_hyperbolic, shell_radius)

disk_pt = st.builds(lambda r, t: r * complex(math.cos(t), math.sin(t)),
                    st.floats(0, 0.99), st.floats(0, 2 * math.pi))


def test_diskpoint_rejects_boundary():
    with pytest.raises(OutsideDisk):
        DiskPoint(1.0)
    with pytest.raises(OutsideDisk):
        DiskPoint(0.6 + 0.8j)
    with pytest.raises(OutsideDisk):
        DiskPoint(complex("nan"))
    assert DiskPoint(0.5j).radius == 0.5


def test_polar_keeps_exact_complement():
    r = float(shell_radius(45))
    p = DiskPoint.polar(r, 0.3)
    assert p.complement == pytest.approx(2.0 ** -44, rel=1e-12)


def test_pseudo_hyperbolic_examples():
    assert pseudo_hyperbolic(0, 0.3 + 0.4j) == pytest.approx(0.5, abs=1e-15)
    assert pseudo_hyperbolic(0.2j, 0.2j) == 0.0
    # |1| / |1 + 0.25|
    assert pseudo_hyperbolic(0.5, -0.5) == pytest.approx(0.8, abs=1e-15)
    assert pseudo_hyperbolic(DiskPoint(0.5), DiskPoint(-0.5)) == pytest.approx(0.8, abs=1e-15)


def test_hyperbolic_examples():
    assert hyperbolic(0, 0) == 0.0
    # arctanh(1/2) = ln(3)/2
    assert hyperbolic(0, 0.5) == pytest.approx(0.549306144334054845697622618461, rel=1e-15)
    assert hyperbolic(0, 0.5) == pytest.approx(0.5 * math.log(3.0), rel=1e-15)
    assert hyperbolic(0, 0.9) > hyperbolic(0, 0.5)


def test_hyperbolic_refuses_near_unit_distance():
    with pytest.raises(ParameterDomain):
        hyperbolic(0, 1 - 1e-16)
    with pytest.raises(ParameterDomain):
        hyperbolic(-float(shell_radius(30)), float(shell_radius(30)))


@settings(max_examples=200, deadline=None)
@given(disk_pt, disk_pt, disk_pt)
def test_pseudo_hyperbolic_symmetry_and_moebius_invariance(z, w, a):
    assert pseudo_hyperbolic(z, w) == pytest.approx(pseudo_hyperbolic(w, z), abs=1e-12)
    rho = pseudo_hyperbolic(z, w)
    moved = pseudo_hyperbolic(disk_automorphism(a, z), disk_automorphism(a, w))
    assert moved == pytest.approx(rho, abs=1e-12)
    assert 0.0 <= rho < 1.0


@settings(max_examples=200, deadline=None)
@given(disk_pt, disk_pt)
def test_hyperbolic_is_arctanh_of_rho_and_dominates(z, w):
    rho = pseudo_hyperbolic(z, w)
    if rho >= 1 - 1e-15:
        return
    d = hyperbolic(z, w)
    assert d == pytest.approx(math.atanh(rho), abs=1e-12)
    assert d >= rho
    # x^3/3 is below one ulp of x for tiny x, so strictness is only visible above that
    if rho > 1e-5:
        assert d > rho


def test_disk_samples_counts_and_determinism():
    s = disk_samples(SamplingScheme(radial_levels=1, angular_base=4))
    assert len(s) == 4
    assert np.allclose(np.abs(s.z), 0.5)
    s2 = disk_samples(SamplingScheme(radial_levels=2, angular_base=4, angular_growth=2))
    assert len(s2) == 12
    sch = SamplingScheme(radial_levels=10, angular_base=16, angular_growth=1.5, jitter=0.5, seed=7)
    a, b = disk_samples(sch), disk_samples(sch)
    assert np.array_equal(a.z, b.z)
    assert sch.total_points == len(a)


def test_disk_samples_inside_disk_even_at_depth_52():
    s = disk_samples(SamplingScheme(radial_levels=52, angular_base=32))
    assert np.all(np.abs(s.z) < 1.0)
    assert np.all(s.complement > 0)


def test_disk_samples_cap():
    with pytest.raises(ResourceLimit):
        disk_samples(SamplingScheme(radial_levels=40, angular_base=1000, angular_growth=2.0))


def test_scheme_validation():
    with pytest.raises(ParameterDomain):
        SamplingScheme(radial_levels=0)
    with pytest.raises(ParameterDomain):
        SamplingScheme(angular_base=0)
    with pytest.raises(ParameterDomain):
        SamplingScheme(refinement_rounds=-1)
