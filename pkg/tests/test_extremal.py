import math

import numpy as np
import pytest

from hbloch import H, H_band_limit, H_extremals, ParameterDomain, log_H, maximiser, power_normaliser, znbar_limit, znbar_norm
from hbloch.oracles import golden_section_max, grid_max_H, log_ratio_H, numerical_band_limit

# high-precision references (30-digit root of dH/dx = 0)
REF = {
    (2, 1.0): (0.577350269189625764509148780502, 0.384900179459750509672765853668),
    (10, 2.0): (0.832050294337843683027512600185, 0.01809587072917314077882430457),
    (200, 3.0): (0.985257178262139418111902475551, 1.30486053332549187839239899962e-6),
    (50, 0.5): (0.989949493661166534161182106947, 0.0862092471112709869282060378694),
}


def test_H_basic_values():
    assert H(1, 1.0, 0.0) == 1.0
    assert H(1, 2.0, 0.5) == pytest.approx(0.75 ** 2)
    for n in (1, 2, 70, 500):
        assert H(n, 0.7, 1.0) == 0.0
    with pytest.raises(ParameterDomain):
        H(2, 1.0, 1.1)
    with pytest.raises(ParameterDomain):
        H(2, 1.0, -0.1)
    with pytest.raises(ParameterDomain):
        H(0, 1.0, 0.5)
    with pytest.raises(ParameterDomain):
        H(2, 0.0, 0.5)


def test_H_log_domain_branch_agrees():
    x = np.linspace(0.01, 0.99, 50)
    direct = x ** 99 * (1 - x * x) ** 1.5
    assert np.allclose(H(100, 1.5, x), direct, rtol=1e-12, atol=1e-300)
    assert np.allclose(np.exp(log_H(100, 1.5, x)), direct, rtol=1e-12)


@pytest.mark.parametrize("key", list(REF))
def test_extremals_against_frozen_references(key):
    n, a = key
    r, mx = REF[key]
    ex = H_extremals(n, a)
    assert ex.r == pytest.approx(r, rel=1e-14)
    assert ex.max_value == pytest.approx(mx, rel=1e-13)


def test_n_equals_one_row():
    for a in (0.5, 1.0, 2.0, 3.0):
        ex = H_extremals(1, a)
        assert ex.r == 0.0 and ex.max_value == 1.0
        assert ex.band_min == pytest.approx(H(1, a, maximiser(2, a)), rel=1e-14)


def test_band_min_is_H_at_next_maximiser():
    for n in (1, 2, 5, 40, 300):
        for a in (0.5, 1.0, 3.0):
            assert H_extremals(n, a).band_min == pytest.approx(H(n, a, maximiser(n + 1, a)), rel=1e-12)


def test_band_limit_values():
    assert H_band_limit(math.e / 2) == pytest.approx(1.0, rel=1e-15)
    assert H_band_limit(1.0) == pytest.approx(0.735758882342884643191047540323, rel=1e-15)
    assert H_band_limit(2.0) == pytest.approx(2.16536453178580307030399191956, rel=1e-15)
    # n * band_min at n = 1e6, computed at 30 digits
    assert 1e6 * H_extremals(10 ** 6, 1.0).band_min == pytest.approx(0.735758882342639390720771649691, rel=1e-12)


def test_znbar_norm_values():
    for a in (0.3, 1.0, 4.0):
        assert znbar_norm(1, a) == 2.0
    assert znbar_norm(2, 1.0) == pytest.approx(1.53960071783900203869106341467, rel=1e-14)


def test_znbar_limit_with_exponent():
    for a in (0.5, 1.0, 2.0):
        n = 10 ** 5
        seq = n ** (a - 1) * znbar_norm(n, a)
        assert seq == pytest.approx(2 * (2 * a / math.e) ** a, rel=1e-4)
        assert znbar_limit(a) == pytest.approx(2 * (2 * a / math.e) ** a)
        assert power_normaliser(a) * znbar_limit(a) == pytest.approx(1.0)
    # without the exponent the limit would be 2(2a/e), visibly different at a = 2
    assert abs(10 ** 5 * znbar_norm(10 ** 5, 2.0) - 2 * (4 / math.e)) > 1.0


def test_golden_section_oracle_is_independent_of_closed_forms():
    x, m = golden_section_max(2, 1.0)
    assert x == pytest.approx(REF[(2, 1.0)][0], rel=1e-13)
    assert m == pytest.approx(REF[(2, 1.0)][1], rel=1e-14)
    gx, _, h = grid_max_H(10, 2.0)
    assert abs(gx - REF[(10, 2.0)][0]) <= h


def test_log_ratio_is_antisymmetric():
    assert log_ratio_H(7, 1.3, 0.4, 0.6) == pytest.approx(-log_ratio_H(7, 1.3, 0.6, 0.4), rel=1e-13)
    assert log_ratio_H(7, 1.3, 0.5, 0.5) == 0.0


def test_numerical_band_limit_shrinks_like_one_over_n():
    for a in (0.5, 1.0, 2.0):
        e3 = abs(numerical_band_limit(a, 1000) - H_band_limit(a))
        e4 = abs(numerical_band_limit(a, 10_000) - H_band_limit(a))
        assert e4 < e3
