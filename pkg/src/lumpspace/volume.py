"""Volume forms and total volumes of H_{1,k}.

F(mu) is the density of the volume form against d mu ^ vol_{G/K}. It is
available three ways: the hermitian closed form in the coefficients A_0..A_4,
the Kaehler closed form in (A, A', B), and the Gram determinant of the L2
metric on the Y-frame measured by quadrature.

Vol(G/K) is computed from alpha_k (itself fixed by Vol(CP^(2k+1))) and
cross-checked against a Haar-measure quotient Vol(G)/Vol(K).
"""
from dataclasses import dataclass
import math

import numpy as np
from scipy import integrate as _integrate
from scipy import special

from lumpspace.errors import NumericalError, UsageError
from lumpspace.kahler import KahlerProfile, L2Profile, coefficients, validate_profile
from lumpspace.lie import y_frame
from lumpspace.maps import l2_gram, tangent_field


def _check_k(k, lo=1):
    if int(k) != k or k < lo:
        raise UsageError(f"k must be an integer >= {lo}, got {k}")
    return int(k)


# --- volume-form factor ---------------------------------------------------

def volume_factor_hermitian(coeffs, mu, k):
    """sqrt(8) mu ((mu^2+1)/(mu^2-1))^2 A0 A1 A2 (A3 A4)^(k-1)."""
    if not mu > 1:
        raise UsageError(f"mu must exceed 1, got {mu}")
    r = (mu * mu + 1.0) / (mu * mu - 1.0)
    return (math.sqrt(8.0) * mu * r * r * coeffs.A0 * coeffs.A1 * coeffs.A2
            * (coeffs.A3 * coeffs.A4) ** (k - 1))


def _kahler_factor(profile, mu, k):
    # B^2 - A^2/4 = (B + A/2)(B - A/2), the second factor taken from the
    # cancellation-free deficit 2B - A.
    mu = np.asarray(mu, dtype=float)
    A = profile.A(mu)
    gap = 0.5 * profile.deficit(mu)
    return (A * A * ((2.0 * profile.B - gap) * gap) ** (k - 1) * profile.dA(mu)) / math.sqrt(2.0)


def volume_factor_closed(profile, mu, k, form="kahler"):
    """F(mu). ``form='kahler'`` uses (1/sqrt 2) A^2 (B^2 - A^2/4)^(k-1) A';
    ``form='hermitian'`` goes through the coefficient functions."""
    k = _check_k(k)
    if not mu > 1:
        raise UsageError(f"mu must exceed 1, got {mu}")
    if form == "kahler":
        return float(_kahler_factor(profile, mu, k))
    if form == "hermitian":
        return volume_factor_hermitian(coefficients(profile, mu), mu, k)
    raise UsageError(f"unknown form {form!r}")


def y_frame_gram(k, mu, c2, grid):
    """L2 Gram matrix of the Y-frame, measured by quadrature."""
    fields = [tangent_field(mu, y, grid) for y in y_frame(mu, k)]
    return l2_gram(fields, c2=c2)


def volume_factor_gram(k, mu, c1=4.0, c2=4.0, grid=None):
    """sqrt(det) of the measured (4k+2)x(4k+2) Y-frame Gram matrix."""
    from lumpspace.quadrature import build_grid

    k = _check_k(k)
    if not mu > 1:
        raise UsageError(f"mu must exceed 1, got {mu}")
    grid = build_grid(c1=c1) if grid is None else grid
    if abs(grid.c1 - c1) > 1e-15 * c1:
        raise UsageError(f"grid was built for c1={grid.c1}, not {c1}")
    G = y_frame_gram(k, mu, c2, grid)
    try:
        L = np.linalg.cholesky(G)
    except np.linalg.LinAlgError:
        raise NumericalError(f"measured Gram matrix is not positive definite at mu={mu}; "
                             "refine the grid") from None
    return float(np.prod(np.diag(L)))


# --- constants ------------------------------------------------------------

def alpha_const(k):
    """alpha_k = (2 pi)^(2k+1) / (2k+1)!."""
    k = _check_k(k)
    return math.exp((2 * k + 1) * math.log(2.0 * math.pi) - math.lgamma(2 * k + 2))


def t_integral(k, upper=1.0):
    """int_0^upper t^2 (1 - t^2)^(k-1) dt for 0 <= upper <= 1, via the
    regularised incomplete beta function (s = t^2)."""
    k = _check_k(k)
    if not 0.0 <= upper <= 1.0:
        raise UsageError(f"upper limit must lie in [0, 1], got {upper}")
    return 0.5 * special.beta(1.5, k) * special.betainc(1.5, k, upper * upper)


def t_integral_exact(k):
    """(k-1)! 2^(k-1) / (2k+1)!!."""
    k = _check_k(k)
    return math.factorial(k - 1) * 2 ** (k - 1) / float(special.factorial2(2 * k + 1, exact=True))


def vol_g_mod_k(k):
    """Vol(G/K) forced by alpha_k and the t-integral:
    alpha_k / (4 sqrt 2 (k-1)! 2^(k-1) / (2k+1)!!) = pi^(2k+1) / (sqrt 2 (k-1)! k!)."""
    k = _check_k(k)
    return alpha_const(k) / (4.0 * math.sqrt(2.0) * t_integral_exact(k))


def vol_g_mod_k_printed(k):
    """The alternative closed form 2^k pi^(2k+1) / (sqrt 2 (k-1)! k!)."""
    k = _check_k(k)
    return 2.0 ** k * math.pi ** (2 * k + 1) / (math.sqrt(2.0) * math.factorial(k - 1) * math.factorial(k))


def vol_unitary(n):
    """Riemannian volume of U(n) for the metric -1/2 tr(X Y)."""
    if n == 0:
        return 1.0
    logv = (-0.5 * n * n * math.log(2.0) + 0.5 * n * (n + 1) * math.log(2.0 * math.pi)
            - sum(math.lgamma(j + 1) for j in range(1, n)))
    return math.exp(logv)


def vol_g_mod_k_haar(k):
    """Vol(G)/Vol(K) with G = U(k+1) x U(2), K = T^3 x U(k-1), all volumes
    for the metric -1/2 (tr A A' + tr B B'). The torus generators have Gram
    determinant 1/2."""
    k = _check_k(k)
    vol_torus = (2.0 * math.pi) ** 3 * math.sqrt(0.5)
    return vol_unitary(k + 1) * vol_unitary(2) / (vol_torus * vol_unitary(k - 1))


@dataclass(frozen=True)
class VolGKReport:
    k: int
    adjudicated: float
    printed: float
    haar: float

    @property
    def ratio(self):
        """printed / adjudicated; equals 2^k."""
        return self.printed / self.adjudicated


def vol_g_mod_k_report(k):
    return VolGKReport(k=int(k), adjudicated=vol_g_mod_k(k), printed=vol_g_mod_k_printed(k),
                       haar=vol_g_mod_k_haar(k))


# --- total volume ---------------------------------------------------------

def _check_total_volume_profile(profile, k):
    if not isinstance(profile, KahlerProfile):
        raise UsageError("expected a KahlerProfile")
    report = validate_profile(profile)
    if not report["valid"]:
        raise UsageError(f"invalid profile: {report}")
    if k == 1 and abs(profile.A_inf - 2.0 * profile.B) > 1e-12 * profile.B:
        raise UsageError("k = 1 total volume is only defined here for profiles with A(inf) = 2B")


def total_volume(profile, k):
    """4 sqrt2 B^(2k+1) Vol(G/K) int_0^(A(inf)/2B) t^2 (1-t^2)^(k-1) dt."""
    k = _check_k(k)
    _check_total_volume_profile(profile, k)
    upper = min(profile.A_inf / (2.0 * profile.B), 1.0)
    return 4.0 * math.sqrt(2.0) * profile.B ** (2 * k + 1) * vol_g_mod_k(k) * t_integral(k, upper)


def total_volume_full_range(B, k):
    """(2 B pi)^(2k+1) / (2k+1)!, the value when A(inf) = 2B."""
    k = _check_k(k)
    return math.exp((2 * k + 1) * math.log(2.0 * B * math.pi) - math.lgamma(2 * k + 2))


def _s_panels(n_panels, n_nodes):
    """Gauss-Legendre nodes on s in [0, 1 - 2^-n_panels], graded towards
    s = 1 so the mu -> infinity end is resolved at every scale."""
    x, w = np.polynomial.legendre.leggauss(n_nodes)
    edges = np.concatenate([[0.0], 1.0 - 0.5 ** np.arange(1, n_panels + 1)])
    a, b = edges[:-1, None], edges[1:, None]
    s = 0.5 * (b - a) * x[None, :] + 0.5 * (a + b)
    ws = 0.5 * (b - a) * w[None, :]
    return s.ravel(), ws.ravel(), 1.0 / (1.0 - edges[-1])


def mu_integral(profile, k, n_panels=48, n_nodes=24):
    """int_1^inf F(mu) d mu with mu = 1/(1-s). Returns (value, tail_bound),
    where tail_bound = mu_end F(mu_end) majorises the neglected piece for
    integrands decaying at least like mu^-2."""
    k = _check_k(k)
    s, ws, mu_end = _s_panels(n_panels, n_nodes)
    mu = 1.0 / (1.0 - s)
    vals = _kahler_factor(profile, mu, k) * mu * mu
    if not np.all(np.isfinite(vals)):
        raise NumericalError("non-finite volume integrand", location=float(mu[~np.isfinite(vals)][0]))
    tail = float(mu_end * _kahler_factor(profile, np.array([mu_end]), k)[0])
    return float(np.dot(ws, vals)), abs(tail)


def total_volume_numeric(profile, k, **kw):
    """Vol(G/K) * int_1^inf F(mu) d mu, by quadrature."""
    k = _check_k(k)
    _check_total_volume_profile(profile, k)
    value, _ = mu_integral(profile, k, **kw)
    return vol_g_mod_k(k) * value


def vol_cp(k, c=1.0):
    """Vol(CP^(2k+1)) for holomorphic sectional curvature c: (4 pi / c)^(2k+1) / (2k+1)!."""
    k = _check_k(k)
    return total_volume_full_range(2.0 / c, k)


def vol_g_mod_k_from_fs(k, c=1.0, **kw):
    """Vol(G/K) recovered as Vol(CP^(2k+1)) / int F_FS d mu."""
    from lumpspace.kahler import fs_profile

    value, _ = mu_integral(fs_profile(c), k, **kw)
    return vol_cp(k, c) / value


# --- Baptista formula -----------------------------------------------------

@dataclass(frozen=True)
class BaptistaParams:
    d: int
    k: int
    g: int = 0
    c2: float = 4.0
    vol_sigma: float = math.pi

    def __post_init__(self):
        for name in ("d", "k", "g"):
            v = getattr(self, name)
            if int(v) != v:
                raise UsageError(f"{name} must be an integer, got {v}")
        if self.d < 1 or self.k < 1 or self.g < 0:
            raise UsageError("need d >= 1, k >= 1, g >= 0")
        if not self.d > 2 * self.g - 1:
            raise UsageError(f"formula needs d > 2g - 1 (d={self.d}, g={self.g})")
        if not (self.c2 > 0 and self.vol_sigma > 0):
            raise UsageError("c2 and vol_sigma must be positive")

    @property
    def N(self):
        return (self.k + 1) * (self.d + 1 - self.g) + self.g - 1


def baptista_log_volume(p):
    N = p.N
    return (p.g * math.log(p.k + 1) - math.lgamma(N + 1)
            + N * math.log(4.0 * math.pi * p.vol_sigma / p.c2))


def baptista_volume(p):
    """(k+1)^g / N! (4 pi Vol(Sigma) / c2)^N."""
    return math.exp(baptista_log_volume(p))


# --- incompleteness -------------------------------------------------------

def ray_length(profile, mu_max, epsabs=1e-14, epsrel=1e-12):
    """Length of mu -> phi_mu on [1, mu_max], int sqrt(A0) d mu, computed in
    s = 1/mu so that mu_max = inf is a finite endpoint."""
    if not mu_max > 1:
        if mu_max == 1:
            return 0.0
        raise UsageError(f"mu_max must be >= 1, got {mu_max}")

    def integrand(s):
        if s <= 0.0:
            return 0.0
        mu = 1.0 / s
        return math.sqrt(max(float(profile.A0(mu)), 0.0)) * mu * mu

    lo = 0.0 if math.isinf(mu_max) else 1.0 / mu_max
    # split at decades so the sqrt(log) behaviour near s = 0 is seen
    pts = [p for p in (1e-12, 1e-9, 1e-6, 1e-4, 1e-2, 0.1) if lo < p < 1.0]
    edges = [lo] + pts + [1.0]
    total = 0.0
    for a, b in zip(edges[:-1], edges[1:]):
        val, _err = _integrate.quad(integrand, a, b, epsabs=epsabs, epsrel=epsrel, limit=200)
        total += val
    return total


def ray_tail_bound(profile, mu_lo):
    """Asymptotic size of int_{mu_lo}^inf sqrt(A0): for the L2 profile
    sqrt(2 C log mu)/mu^2 integrates to about sqrt(2 C log mu_lo)/mu_lo."""
    if isinstance(profile, L2Profile):
        return math.sqrt(2.0 * profile.C * math.log(mu_lo)) / mu_lo
    return math.sqrt(float(profile.A0(mu_lo))) * mu_lo
