import math

import numpy as np
import pytest

from lumpspace.errors import NumericalError, UsageError
from lumpspace.quadrature import build_grid, integrate, parse_resolution


@pytest.mark.parametrize("n, c1, area", [((64, 64), 4.0, math.pi), ((8, 8), 1.0, 4 * math.pi)])
def test_total_area(n, c1, area):
    g = build_grid(*n, c1)
    assert g.weights.sum() == pytest.approx(area, rel=1e-12)
    assert integrate(g, np.ones(g.size)) == pytest.approx(area, rel=1e-12)
    assert np.all(g.weights > 0)


def test_beta_oracles():
    g = build_grid(64, 64, 4.0)
    # 2 pi int r^3 (1+r^2)^-4 dr = pi/6 ;  2 pi int r (1+r^2)^-3 dr = pi/2
    assert integrate(g, lambda z: abs(z) ** 2 / (1 + abs(z) ** 2) ** 2) == pytest.approx(math.pi / 6, rel=1e-13)
    assert integrate(g, lambda z: 1 / (1 + abs(z) ** 2)) == pytest.approx(math.pi / 2, rel=1e-13)


def test_nodes_distinct():
    g = build_grid(16, 16)
    pts = np.round(g.z, 12)
    assert np.unique(pts).size == g.size


def test_spectral_convergence():
    f = lambda z: 1 / (2 + abs(z) ** 2) ** 2  # rational in t
    a = integrate(build_grid(64, 64), f)
    b = integrate(build_grid(128, 128), f)
    assert abs(a - b) <= 1e-10 * abs(b)


def test_rotation_invariance():
    g = build_grid(32, 32)
    f = lambda z: (1 + (z ** 3).real + abs(z) ** 2) / (1 + abs(z) ** 2) ** 4
    for alpha in (0.3, 1.7):
        assert integrate(g, lambda z: f(np.exp(1j * alpha) * z)) == pytest.approx(integrate(g, f), abs=1e-12)


def test_deterministic_reduction():
    g = build_grid(40, 40)
    vals = np.cos(g.theta) * g.t
    assert integrate(g, vals) == integrate(g, vals.copy())


def test_errors():
    with pytest.raises(UsageError):
        build_grid(1, 8)
    with pytest.raises(UsageError):
        build_grid(8, 2)
    with pytest.raises(UsageError):
        build_grid(8, 8, 0.0)
    g = build_grid(8, 8)
    bad = np.ones(g.size)
    bad[5] = np.nan
    with pytest.raises(NumericalError) as e:
        integrate(g, bad)
    assert e.value.location == pytest.approx(complex(g.z[5]))
    with pytest.raises(UsageError):
        integrate(g, np.ones(3))


def test_parse_resolution():
    assert parse_resolution("128x96") == (128, 96)
    with pytest.raises(UsageError):
        parse_resolution("12by4")
