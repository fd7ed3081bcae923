import numpy as np
import pytest

from hbloch import HarmonicFunction, PowerSeries


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_poly_harmonic(rng, degree=6):
    ch = rng.standard_normal(degree + 1) + 1j * rng.standard_normal(degree + 1)
    cg = rng.standard_normal(degree + 1) + 1j * rng.standard_normal(degree + 1)
    return HarmonicFunction(PowerSeries(ch / np.arange(1, degree + 2)), PowerSeries(cg / np.arange(1, degree + 2)))


def random_disk_points(rng, m, rmax=0.95):
    r = rmax * np.sqrt(rng.random(m))
    return r * np.exp(2j * np.pi * rng.random(m))


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", {}) if mod else {}
    if lines:
        terminalreporter.section("acceptance criteria")
        for k in sorted(lines):
            terminalreporter.write_line(lines[k])
