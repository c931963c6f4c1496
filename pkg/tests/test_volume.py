import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from lumpspace.errors import UsageError
from lumpspace.kahler import CustomProfile, fs_profile, l2_profile
from lumpspace.lie import y_frame
from lumpspace.volume import (BaptistaParams, alpha_const, baptista_log_volume, baptista_volume, mu_integral,
                              ray_length, ray_tail_bound, t_integral, t_integral_exact, total_volume,
                              total_volume_full_range, total_volume_numeric, vol_cp, vol_g_mod_k,
                              vol_g_mod_k_from_fs, vol_g_mod_k_haar, vol_g_mod_k_printed, vol_g_mod_k_report,
                              vol_unitary, volume_factor_closed, volume_factor_gram, y_frame_gram)

from oracles import (L2_AT_2, L2_RAY_1E3, L2_RAY_1E6, L2_RAY_INFINITY, l2_A, l2_dA, vol_g_mod_k_fibration,
                     vol_unitary_haar)

PI10_120 = math.pi ** 10 / 120


# --- F(mu) ----------------------------------------------------------------

def test_factor_example(l2):
    A, dA, B = L2_AT_2["A"], float(l2_dA(2.0)), math.pi / 2
    expected = A * A * (B * B - A * A / 4) * dA / math.sqrt(2)
    assert volume_factor_closed(l2, 2.0, 2) == pytest.approx(expected, rel=1e-13)
    assert A * A == pytest.approx(1.86247, abs=1e-5)
    assert dA == pytest.approx(0.86706, abs=1e-5)


def test_factor_vanishes_at_one(l2):
    vals = [volume_factor_closed(l2, 1 + 10.0 ** -e, 2) for e in (2, 4, 6)]
    assert vals[0] > vals[1] > vals[2] and vals[2] < 1e-10
    with pytest.raises(UsageError):
        volume_factor_closed(l2, 1.0, 2)
    with pytest.raises(UsageError):
        volume_factor_closed(l2, 2.0, 2, form="bogus")


@given(st.floats(1.0 + 1e-5, 1e5), st.integers(1, 4))
def test_hermitian_equals_kahler(mu, k):
    for prof in (l2_profile(), fs_profile(1.0)):
        h = volume_factor_closed(prof, mu, k, form="hermitian")
        kf = volume_factor_closed(prof, mu, k)
        assert h == pytest.approx(kf, rel=1e-12)


@pytest.mark.parametrize("k", [1, 2])
@pytest.mark.parametrize("mu", [1.1, 1.5, 2.0, 5.0])
def test_gram_matches_closed(k, mu, grid, l2):
    assert volume_factor_gram(k, mu, grid=grid) == pytest.approx(volume_factor_closed(l2, mu, k), rel=1e-8)


def test_gram_other_curvatures():
    from lumpspace.quadrature import build_grid

    g = build_grid(96, 96, 2.0)
    assert volume_factor_gram(2, 3.0, 2.0, 1.0, g) == pytest.approx(
        volume_factor_closed(l2_profile(2.0, 1.0), 3.0, 2), rel=1e-8)


def test_y_frame_gram_structure(grid):
    # (Y3, Y5) and (Y4, Y6) pair p-mu with p-tilde directions, which are not
    # metrically orthogonal; every other off-diagonal entry vanishes.
    G = y_frame_gram(2, 2.0, 4.0, grid)
    n = G.shape[0]
    coupled = {(2, 4), (4, 2), (3, 5), (5, 3)}
    for i in range(n):
        for j in range(n):
            if i != j and (i, j) not in coupled:
                assert abs(G[i, j]) < 1e-10, (i, j, G[i, j])
    assert np.all(np.diag(G) > 0)
    assert len(y_frame(2.0, 2)) == n == 4 * 2 + 2


# --- constants ------------------------------------------------------------

def test_alpha_examples():
    assert alpha_const(2) == pytest.approx((2 * math.pi) ** 5 / 120, rel=1e-14)
    assert alpha_const(2) == pytest.approx(81.6053, abs=1e-4)
    assert alpha_const(3) == pytest.approx(76.706, abs=5e-4)
    for k in range(1, 8):
        assert 2 ** (2 * k + 1) * alpha_const(k) == pytest.approx(
            (4 * math.pi) ** (2 * k + 1) / math.factorial(2 * k + 1), rel=1e-13)


def test_t_integral():
    assert t_integral_exact(2) == pytest.approx(2 / 15, rel=1e-15)
    for k in range(1, 9):
        assert t_integral(k) == pytest.approx(t_integral_exact(k), rel=1e-13)
    # the k=2 integrand is t^2 - t^4
    assert t_integral(2, 0.5) == pytest.approx(0.5 ** 3 / 3 - 0.5 ** 5 / 5, rel=1e-14)
    with pytest.raises(UsageError):
        t_integral(2, 1.5)


def test_vol_g_mod_k():
    assert vol_g_mod_k(2) == pytest.approx(math.pi ** 5 / (2 * math.sqrt(2)), rel=1e-14)
    assert vol_g_mod_k(2) == pytest.approx(108.19, abs=5e-3)
    for k in range(1, 7):
        closed = math.pi ** (2 * k + 1) / (math.sqrt(2) * math.factorial(k - 1) * math.factorial(k))
        assert vol_g_mod_k(k) == pytest.approx(closed, rel=1e-13)
        assert vol_g_mod_k_haar(k) == pytest.approx(vol_g_mod_k(k), rel=1e-12)
        assert vol_g_mod_k(k) == pytest.approx(vol_g_mod_k_fibration(k), rel=1e-12)
        rep = vol_g_mod_k_report(k)
        assert rep.ratio == pytest.approx(2.0 ** k, rel=1e-14)
        assert rep.printed == vol_g_mod_k_printed(k)


def test_vol_unitary_against_fibration():
    for n in range(0, 7):
        assert vol_unitary(n) == pytest.approx(float(vol_unitary_haar(n)), rel=1e-13)
    assert vol_unitary(1) == pytest.approx(2 * math.pi / math.sqrt(2))  # circle of radius 1/sqrt 2


# --- total volume ---------------------------------------------------------

def test_total_volume_l2_example(l2):
    assert total_volume(l2, 2) == pytest.approx(PI10_120, rel=1e-13)
    assert total_volume(l2, 2) == pytest.approx(780.40, abs=5e-3)
    assert total_volume_numeric(l2, 2) == pytest.approx(PI10_120, rel=1e-9)


def test_total_volume_fs_example(fs1):
    v = (4 * math.pi) ** 5 / 120
    assert v == pytest.approx(2611.37, abs=5e-3)
    assert total_volume(fs1, 2) == pytest.approx(v, rel=1e-13)
    assert total_volume_numeric(fs1, 2) == pytest.approx(v, rel=1e-10)


@pytest.mark.parametrize("k", [2, 3, 4])
def test_total_volume_closure(k, l2, fs1):
    for prof in (l2, fs1):
        ref = total_volume_full_range(prof.B, k)
        assert total_volume_numeric(prof, k) == pytest.approx(ref, rel=1e-6)
        assert total_volume(prof, k) == pytest.approx(ref, rel=1e-12)
        value, tail = mu_integral(prof, k)
        assert tail < 1e-9 * value


@pytest.mark.parametrize("k", [2, 3])
def test_fs_oracle_reproduces_vol_cp(k):
    assert vol_g_mod_k_from_fs(k) == pytest.approx(vol_g_mod_k(k), rel=1e-9)
    assert vol_cp(k, 1.0) == pytest.approx((4 * math.pi) ** (2 * k + 1) / math.factorial(2 * k + 1))


def _truncated(shape):
    # A rises from 0 to B (= 1); two different interiors
    if shape == "quadratic":
        return CustomProfile(A=lambda m: 1 - 1 / m ** 2, dA=lambda m: 2 / m ** 3, B=1.0, A_inf=1.0)
    return CustomProfile(A=lambda m: 1 - 1 / m, dA=lambda m: 1 / m ** 2, B=1.0, A_inf=1.0)


@pytest.mark.parametrize("k", [2, 3])
def test_truncated_profile_volume(k):
    p1, p2 = _truncated("quadratic"), _truncated("linear")
    B = 1.0
    ref = 4 * B ** (2 * k + 1) * math.pi ** (2 * k + 1) / (math.factorial(k - 1) * math.factorial(k)) * t_integral(k, 0.5)
    assert total_volume(p1, k) == pytest.approx(ref, rel=1e-13)
    assert total_volume_numeric(p1, k) == pytest.approx(ref, rel=1e-9)
    assert total_volume_numeric(p2, k) == pytest.approx(total_volume_numeric(p1, k), rel=1e-9)
    assert total_volume(p1, k) < total_volume_full_range(B, k)


def test_k1_rejections(l2):
    assert total_volume(l2, 1) == pytest.approx(total_volume_full_range(l2.B, 1), rel=1e-13)
    with pytest.raises(UsageError):
        total_volume(_truncated("quadratic"), 1)
    with pytest.raises(UsageError):
        total_volume(l2, 0)
    with pytest.raises(UsageError):
        total_volume("not a profile", 2)


# --- Baptista formula ---------------------------------------------------

def test_baptista_examples(l2):
    assert baptista_volume(BaptistaParams(d=1, k=2, g=0, c2=4, vol_sigma=math.pi)) == pytest.approx(PI10_120, rel=1e-13)
    for c, V in ((4.0, math.pi), (1.0, 2.5)):
        p = BaptistaParams(d=2, k=1, g=1, c2=c, vol_sigma=V)
        assert p.N == 4
        assert baptista_volume(p) == pytest.approx(2 / math.factorial(4) * (4 * math.pi * V / c) ** 4, rel=1e-13)
    for d, k in ((2, 2), (3, 1), (4, 3)):
        p = BaptistaParams(d=d, k=k, c2=2.0, vol_sigma=1.5)
        N = d * k + d + k
        assert p.N == N
        assert baptista_volume(p) == pytest.approx((4 * math.pi * 1.5 / 2.0) ** N / math.factorial(N), rel=1e-12)


@pytest.mark.parametrize("k", [2, 3, 4])
def test_baptista_closure(k, l2):
    p = BaptistaParams(d=1, k=k, g=0, c2=4.0, vol_sigma=math.pi)
    assert p.N == 2 * k + 1
    assert baptista_volume(p) == pytest.approx(total_volume(l2, k), rel=1e-12)


def test_baptista_large_n():
    p = BaptistaParams(d=200, k=40, g=3)
    lv = baptista_log_volume(p)
    assert math.isfinite(lv) and lv < -1000
    assert baptista_volume(p) == 0.0


def test_baptista_rejections():
    with pytest.raises(UsageError):
        BaptistaParams(d=1, k=1, g=1)
    with pytest.raises(UsageError):
        BaptistaParams(d=0, k=1)
    with pytest.raises(UsageError):
        BaptistaParams(d=1, k=1, c2=-1.0)


# --- ray length -----------------------------------------------------------

def test_ray_length_small(l2):
    assert ray_length(l2, 1.0) == 0.0
    assert ray_length(l2, 1 + 1e-8) < 1e-8
    with pytest.raises(UsageError):
        ray_length(l2, 0.5)


def test_ray_length_monotone(l2):
    vals = [ray_length(l2, m) for m in (1.1, 2.0, 10.0, 1e3, 1e6, np.inf)]
    assert all(a < b for a, b in zip(vals, vals[1:]))


def test_ray_length_pinned(l2):
    assert ray_length(l2, 1e3) == pytest.approx(L2_RAY_1E3, rel=1e-9)
    assert ray_length(l2, 1e6) == pytest.approx(L2_RAY_1E6, rel=1e-9)
    assert ray_length(l2, np.inf) == pytest.approx(L2_RAY_INFINITY, rel=1e-9)


def test_ray_tail_estimate(l2):
    gap = ray_length(l2, 1e6) - ray_length(l2, 1e3)
    est = ray_tail_bound(l2, 1e3) - ray_tail_bound(l2, 1e6)
    assert gap == pytest.approx(est, rel=0.05)


def test_ray_fs_closed_form(fs1):
    # A0 = 16 mu^2 ... ; compare with direct scipy integration in mu
    from scipy.integrate import quad

    ref, _ = quad(lambda m: math.sqrt(fs1.A0(m)), 1, 50, epsrel=1e-12, limit=200)
    assert ray_length(fs1, 50.0) == pytest.approx(ref, rel=1e-9)
