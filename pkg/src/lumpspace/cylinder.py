"""The cylinder C_W = {[mu W, 1, 0, ..., 0] : mu in C^*} for W = z^d on the
round sphere of curvature c1.

Its induced L2 metric is conformal with density

    F(|mu|) = (4/c2) int |W|^2 / (1 + |mu|^2 |W|^2)^2  dA_{c1},

and Vol(C_W) = int_{C^*} F = (4 pi / c2) Vol(Sigma), whatever d is.

Both iterated integrals are evaluated with trapezoid rules in logarithmic
variables (r = e^v on the domain, |mu| = e^u on C^*). The integrands are
analytic in a strip around the real axis and decay exponentially at both ends,
so these rules converge geometrically. A trapezoid rule in u is the same as a
tanh-type rule in the compact variable sigma = |mu|^2 / (1 + |mu|^2).
"""
from dataclasses import dataclass
import math

import numpy as np

from lumpspace import _kernels
from lumpspace.errors import NumericalError, UsageError
from lumpspace.quadrature import integrate

H_U = 0.25


@dataclass(frozen=True)
class CylinderSpec:
    d: int = 1
    c1: float = 4.0
    c2: float = 4.0
    mu: complex = 1.0

    def __post_init__(self):
        if int(self.d) != self.d or self.d < 1:
            raise UsageError(f"degree d must be a positive integer, got {self.d}")
        if not (self.c1 > 0 and self.c2 > 0):
            raise UsageError("curvatures must be positive")
        if self.mu == 0:
            raise UsageError("mu must be nonzero")

    @property
    def vol_sigma(self):
        return 4.0 * math.pi / self.c1

    @property
    def expected_volume(self):
        return (4.0 * math.pi / self.c2) * self.vol_sigma


def _u_extent(d):
    # rho^2 F(rho) ~ rho^(-2/d) at both ends (it is even in log rho)
    return 20.0 * d + 5.0


def _v_nodes(d, u_max):
    h_v = 0.2 / d
    v_max = u_max / d + 40.0 / (2 * d + 2) + 5.0
    n = int(math.ceil(v_max / h_v))
    return h_v * np.arange(-n, n + 1, dtype=float), h_v


def _radial_prefactor(spec):
    return (4.0 / spec.c2) * (4.0 / spec.c1) * 2.0 * math.pi


def cyl_density_radial(mu_abs, spec):
    """F(|mu|) for an array of |mu| values via the log-radial rule."""
    rho = np.atleast_1d(np.asarray(mu_abs, dtype=float))
    if np.any(~(rho > 0)):
        raise UsageError("|mu| must be positive")
    log_rho = np.log(rho)
    u_max = max(_u_extent(spec.d), float(np.max(np.abs(log_rho))))
    v, h_v = _v_nodes(spec.d, u_max)
    out = _radial_prefactor(spec) * _kernels.cylinder_radial(np.ascontiguousarray(log_rho), spec.d, v, h_v)
    return out if np.ndim(mu_abs) else float(out[0])


def cyl_density(mu_abs, spec, grid=None):
    """F(|mu|). With a QuadGrid the domain integral uses the sphere grid;
    otherwise the log-radial rule. ``mu_abs`` may also be complex, in which
    case only its modulus enters (isorotation symmetry)."""
    if grid is None:
        return cyl_density_radial(np.abs(mu_abs), spec)
    if not abs(mu_abs) > 0:
        raise UsageError("|mu| must be positive")
    if abs(grid.c1 - spec.c1) > 1e-15 * spec.c1:
        raise UsageError(f"grid was built for c1={grid.c1}, not {spec.c1}")
    # |W|^2 = (t/(1-t))^d at each node, W = z^d
    w2 = (grid.t / (1.0 - grid.t)) ** spec.d
    a = np.abs(mu_abs * np.sqrt(w2)) ** 2
    return (4.0 / spec.c2) * integrate(grid, w2 / (1.0 + a) ** 2)


def _mu_first(spec, h_u):
    u_max = _u_extent(spec.d)
    n = int(math.ceil(u_max / h_u))
    u = h_u * np.arange(-n, n + 1, dtype=float)
    v, h_v = _v_nodes(spec.d, u_max)
    F = _radial_prefactor(spec) * _kernels.cylinder_radial(u, spec.d, v, h_v)
    return 2.0 * math.pi * h_u * _kernels.pairwise_sum(np.exp(2.0 * u) * F)


def cylinder_volume(spec, n_mu=None, rtol=1e-10):
    """2 pi int rho F(rho) d rho over (0, inf), rho-integral first.

    ``n_mu`` is the number of outer nodes (default: step 0.25 in log rho).
    The result is compared against the rule with half the step; a relative
    change above ``rtol`` raises NumericalError.
    """
    u_max = _u_extent(spec.d)
    if n_mu is None:
        h_u = H_U
    else:
        if int(n_mu) != n_mu or n_mu < 16:
            raise UsageError(f"n_mu must be an integer >= 16, got {n_mu}")
        h_u = 2.0 * u_max / (n_mu - 1)
    coarse = _mu_first(spec, h_u)
    fine = _mu_first(spec, 0.5 * h_u)
    if not (np.isfinite(fine) and abs(fine - coarse) <= rtol * abs(fine)):
        raise NumericalError(f"cylinder quadrature not converged: {coarse!r} vs {fine!r} "
                             f"(n_mu={n_mu})")
    return float(fine)


def inner_mu_integral(w_abs2, h_u=H_U):
    """int_0^inf rho a / (1 + rho^2 a)^2 d rho for a = |W(z)|^2 (exactly 1/2
    for a > 0, and 0 at zeros of W)."""
    a = np.atleast_1d(np.asarray(w_abs2, dtype=float))
    out = np.zeros_like(a)
    pos = a > 0
    if np.any(pos):
        la = np.log(a[pos])
        u_max = 0.5 * float(np.max(np.abs(la))) + 25.0
        n = int(math.ceil(u_max / h_u))
        u = h_u * np.arange(-n, n + 1, dtype=float)
        out[pos] = _kernels.dilation_inner(np.ascontiguousarray(la), u, h_u)
    return out if np.ndim(w_abs2) else float(out[0])


def _z_first(spec):
    v_max = 40.0
    h_v = 0.2
    n = int(math.ceil(v_max / h_v))
    v = h_v * np.arange(-n, n + 1, dtype=float)
    w2 = np.exp(2.0 * spec.d * v)
    inner = 2.0 * math.pi * inner_mu_integral(w2)
    # dA = (4/c1) r^2/(1+r^2)^2 dv dtheta with r = e^v
    area = np.exp(2.0 * v - 2.0 * np.logaddexp(0.0, 2.0 * v))
    return (4.0 / spec.c2) * (4.0 / spec.c1) * 2.0 * math.pi * h_v * _kernels.pairwise_sum(area * inner)


def fubini_crosscheck(spec):
    """(mu-first, z-first) evaluations of Vol(C_W)."""
    return cylinder_volume(spec), float(_z_first(spec))
