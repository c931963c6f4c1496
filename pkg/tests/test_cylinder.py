import math

import numpy as np
import pytest
from scipy.integrate import quad

from lumpspace.cylinder import (CylinderSpec, cyl_density, cyl_density_radial, cylinder_volume,
                                fubini_crosscheck, inner_mu_integral)
from lumpspace.errors import NumericalError, UsageError
from lumpspace.quadrature import build_grid

PI2 = math.pi ** 2


def _density_oracle(rho, d, c1=4.0, c2=4.0):
    # (4/c2) 2 pi (4/c1) int r^(2d) / (1 + rho^2 r^(2d))^2 * r / (1 + r^2)^2 dr
    f = lambda r: r ** (2 * d + 1) / ((1 + rho * rho * r ** (2 * d)) ** 2 * (1 + r * r) ** 2)
    val = quad(f, 0, 1, epsabs=0, epsrel=1e-13, limit=200)[0] + quad(f, 1, np.inf, epsabs=0, epsrel=1e-13, limit=200)[0]
    return (4 / c2) * (4 / c1) * 2 * math.pi * val


def test_density_d1_beta_oracle():
    assert cyl_density(1.0, CylinderSpec(d=1)) == pytest.approx(math.pi / 6, rel=1e-13)
    # Beta(2, 2) = 1/6: int 2 pi r^3 (1 + r^2)^-4 dr = pi/6
    assert 2 * math.pi * quad(lambda r: r ** 3 / (1 + r * r) ** 4, 0, np.inf)[0] == pytest.approx(math.pi / 6 / 1.0, rel=1e-10)


@pytest.mark.parametrize("d", [1, 2, 3])
@pytest.mark.parametrize("rho", [1e-3, 0.3, 1.0, 4.0, 1e3])
def test_density_vs_scipy(d, rho):
    assert cyl_density(rho, CylinderSpec(d=d)) == pytest.approx(_density_oracle(rho, d), rel=1e-10)


def test_density_grid_path():
    g = build_grid(256, 64, 4.0)
    for d in (1, 2):
        spec = CylinderSpec(d=d)
        assert cyl_density(1.0, spec, g) == pytest.approx(cyl_density(1.0, spec), rel=1e-10)
    with pytest.raises(UsageError):
        cyl_density(1.0, CylinderSpec(c1=1.0), g)


def test_density_monotone_and_decaying():
    rho = np.geomspace(1e-2, 1e6, 60)
    for d in (1, 2, 4):
        F = cyl_density_radial(rho, CylinderSpec(d=d))
        assert np.all(F > 0) and np.all(np.diff(F) < 0)
        assert F[-1] < 1e-10


def test_isorotation():
    spec = CylinderSpec(d=2)
    ref = cyl_density(1.7, spec)
    for phase in np.linspace(0, 2 * math.pi, 13):
        assert cyl_density(1.7 * np.exp(1j * phase), spec) == pytest.approx(ref, rel=1e-12)


def test_density_rejects_zero():
    with pytest.raises(UsageError):
        cyl_density(0.0, CylinderSpec())
    with pytest.raises(UsageError):
        CylinderSpec(mu=0)
    with pytest.raises(UsageError):
        CylinderSpec(d=0)


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_volume_w_independent(d):
    assert cylinder_volume(CylinderSpec(d=d)) == pytest.approx(PI2, rel=1e-10)


def test_volume_scaling():
    assert cylinder_volume(CylinderSpec(c1=1.0, c2=4.0)) == pytest.approx(4 * PI2, rel=1e-10)
    base = cylinder_volume(CylinderSpec(d=2, c1=3.0, c2=5.0))
    half = cylinder_volume(CylinderSpec(d=2, c1=1.5, c2=5.0))
    assert half == pytest.approx(2 * base, rel=1e-10)
    assert base == pytest.approx(CylinderSpec(c1=3.0, c2=5.0).expected_volume, rel=1e-10)


@pytest.mark.parametrize("d", [1, 2, 3])
def test_fubini_orders(d):
    a, b = fubini_crosscheck(CylinderSpec(d=d))
    assert a == pytest.approx(b, rel=1e-8)
    assert b == pytest.approx(PI2, rel=1e-10)


def test_inner_integral_half():
    a = np.geomspace(1e-12, 1e12, 41)
    assert np.max(np.abs(inner_mu_integral(a) - 0.5)) < 1e-12
    assert inner_mu_integral(0.0) == 0.0
    assert inner_mu_integral(np.array([0.0, 1.0]))[0] == 0.0


def test_n_mu():
    assert cylinder_volume(CylinderSpec(), n_mu=401) == pytest.approx(PI2, rel=1e-10)
    with pytest.raises(NumericalError):
        cylinder_volume(CylinderSpec(), n_mu=16)
    with pytest.raises(UsageError):
        cylinder_volume(CylinderSpec(), n_mu=8)
