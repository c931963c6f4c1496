"""Invariant Kaehler metrics on H_{1,k}: profiles (A(mu), B), the coefficient
functions A_0..A_4, metric evaluation on V_mu, measurement of the L2 profile
by quadrature, and residuals of the two closedness constraints.

Every invariant Kaehler metric is fixed by a profile:

    A_0 = A' / (4 mu)      A_1 = A_2 = A (mu^2 - 1) / (mu^2 + 1)
    A_3 = B + A / 2        A_4 = B - A / 2
"""
from dataclasses import dataclass
import math

import numpy as np

from lumpspace.errors import UsageError
from lumpspace.lie import PCoords, Jmap, bracket_p, embed_dmu, project_p
from lumpspace.maps import coords_velocity, l2_inner, phi_mu, tangent_field
from lumpspace.projective import flatten, fs_norm_sq


@dataclass(frozen=True)
class MetricCoefficients:
    A0: float
    A1: float
    A2: float
    A3: float
    A4: float

    def as_tuple(self):
        return (self.A0, self.A1, self.A2, self.A3, self.A4)

    def scaled(self, **factors):
        """Copy with some coefficients multiplied, e.g. ``scaled(A3=1.1)``."""
        vals = {n: getattr(self, n) * factors.get(n, 1.0) for n in ("A0", "A1", "A2", "A3", "A4")}
        return MetricCoefficients(**vals)


class KahlerProfile:
    """Base class. Subclasses provide ``A``, ``dA`` and optionally a
    cancellation-free ``deficit`` = 2B - A. All methods accept arrays."""

    label = "custom"

    def __init__(self, B, A_inf):
        self.B = float(B)
        self.A_inf = float(A_inf)

    def A(self, mu):
        raise NotImplementedError

    def dA(self, mu):
        raise NotImplementedError

    def deficit(self, mu):
        return 2.0 * self.B - self.A(mu)

    def A0(self, mu):
        return self.dA(mu) / (4.0 * np.asarray(mu, dtype=float))

    def coefficients(self, mu):
        return coefficients(self, mu)

    def __repr__(self):
        return f"{type(self).__name__}(label={self.label!r}, B={self.B!r}, A_inf={self.A_inf!r})"


# --- L2 profile -----------------------------------------------------------

_SERIES_H = 0.3          # use the series in h = mu^2 - 1 below this
_SERIES_TERMS = 40


def l2_series_coefficients(n=_SERIES_TERMS):
    """a_m with (mu^4 - 4 mu^2 log mu - 1)/(mu^2 - 1)^2 = sum_{m>=1} a_m h^m,
    h = mu^2 - 1;  a_m = 2 (-1)^(m+1) / ((m+1)(m+2))."""
    m = np.arange(1, n + 1)
    return 2.0 * (-1.0) ** (m + 1) / ((m + 1.0) * (m + 2.0))


_L2_SERIES = l2_series_coefficients()
_L2_DSERIES = np.arange(1, _SERIES_TERMS + 1) * _L2_SERIES   # d/dh coefficients, shifted by one power


def _horner(coef, h):
    acc = np.zeros_like(h)
    for a in coef[::-1]:
        acc = acc * h + a
    return acc


class L2Profile(KahlerProfile):
    """A = C (mu^4 - 4 mu^2 log mu - 1) / (mu^2 - 1)^2,  B = 8 pi / (c1 c2),
    with C = 16 pi / (c1 c2)."""

    label = "L2"

    def __init__(self, c1=4.0, c2=4.0):
        if not (c1 > 0 and c2 > 0):
            raise UsageError("curvatures must be positive")
        self.c1 = float(c1)
        self.c2 = float(c2)
        self.C = 16.0 * math.pi / (self.c1 * self.c2)
        super().__init__(B=8.0 * math.pi / (self.c1 * self.c2), A_inf=self.C)
        self.near_one_series = self.C * _L2_SERIES

    @staticmethod
    def _far(mu):
        # s = 1/mu and log mu, with log mu replaced by 0 at mu = inf where
        # every term it enters is multiplied by a power of s anyway
        s = 1.0 / mu
        L = np.log(np.where(s > 0, mu, 1.0))
        return s, L

    @staticmethod
    def _split(mu):
        mu = np.asarray(mu, dtype=float)
        h = mu * mu - 1.0
        near = h < _SERIES_H
        far = mu >= 2.0
        mid = ~near & ~far
        return mu, h, near, mid, far

    def A(self, mu):
        mu, h, near, mid, far = self._split(mu)
        out = np.empty_like(mu)
        hn = h[near]
        out[near] = hn * _horner(_L2_SERIES, hn)
        m = mu[mid]
        out[mid] = (m ** 4 - 4.0 * m * m * np.log(m) - 1.0) / (m * m - 1.0) ** 2
        s, L = self._far(mu[far])
        out[far] = (1.0 - 4.0 * s * s * L - s ** 4) / (1.0 - s * s) ** 2
        return self.C * out[()] if out.ndim == 0 else self.C * out

    def deficit(self, mu):
        mu, h, near, mid, far = self._split(mu)
        out = np.empty_like(mu)
        out[near | mid] = 2.0 * self.B - self.A(mu[near | mid])
        s, L = self._far(mu[far])
        out[far] = 2.0 * self.C * s * s * (2.0 * L - 1.0 + s * s) / (1.0 - s * s) ** 2
        return out[()] if out.ndim == 0 else out

    def dA(self, mu):
        mu, h, near, mid, far = self._split(mu)
        out = np.empty_like(mu)
        hn = h[near]
        out[near] = 2.0 * mu[near] * _horner(_L2_DSERIES, hn)
        m = mu[mid]
        out[mid] = 8.0 * m * ((m * m + 1.0) * np.log(m) - (m * m - 1.0)) / (m * m - 1.0) ** 3
        s, L = self._far(mu[far])
        out[far] = 8.0 * s ** 3 * ((1.0 + s * s) * L - (1.0 - s * s)) / (1.0 - s * s) ** 3
        return self.C * out[()] if out.ndim == 0 else self.C * out


class FSProfile(KahlerProfile):
    """Restriction of the Fubini-Study metric of curvature c on CP^(2k+1):
    A = (4/c) (mu^2 - 1)/(mu^2 + 1),  B = 2/c."""

    label = "FS"

    def __init__(self, c=1.0):
        if not c > 0:
            raise UsageError("curvature must be positive")
        self.c = float(c)
        super().__init__(B=2.0 / self.c, A_inf=4.0 / self.c)

    def A(self, mu):
        mu = np.asarray(mu, dtype=float)
        s2 = np.where(np.isinf(mu), 0.0, 1.0 / (mu * mu))
        return (4.0 / self.c) * (1.0 - s2) / (1.0 + s2)

    def deficit(self, mu):
        mu = np.asarray(mu, dtype=float)
        s2 = np.where(np.isinf(mu), 0.0, 1.0 / (mu * mu))
        return (8.0 / self.c) * s2 / (1.0 + s2)

    def dA(self, mu):
        mu = np.asarray(mu, dtype=float)
        s = np.where(np.isinf(mu), 0.0, 1.0 / mu)
        return (16.0 / self.c) * s ** 3 / (1.0 + s * s) ** 2


class CustomProfile(KahlerProfile):
    """Profile from user callables; validated on construction."""

    def __init__(self, A, dA, B, A_inf=None, deficit=None, label="custom", validate=True):
        self._A = A
        self._dA = dA
        self._deficit = deficit
        if A_inf is None:
            A_inf = float(A(1e12))
        super().__init__(B=B, A_inf=A_inf)
        self.label = label
        if validate:
            report = validate_profile(self)
            if not report["valid"]:
                raise UsageError(f"not a valid Kaehler profile: {report}")

    def A(self, mu):
        return self._A(np.asarray(mu, dtype=float))

    def dA(self, mu):
        return self._dA(np.asarray(mu, dtype=float))

    def deficit(self, mu):
        if self._deficit is not None:
            return self._deficit(np.asarray(mu, dtype=float))
        return 2.0 * self.B - self.A(mu)


def l2_profile(c1=4.0, c2=4.0):
    return L2Profile(c1, c2)


def fs_profile(c=1.0):
    return FSProfile(c)


def validity_grid(n=400):
    """mu - 1 log-spaced from 1e-6 to 1e6."""
    return 1.0 + np.logspace(-6, 6, n)


def validate_profile(profile, mus=None):
    """Checks A(1+) = 0, A' > 0, A increasing and 0 < A < 2B on a log grid."""
    mus = validity_grid() if mus is None else np.asarray(mus, dtype=float)
    A = np.asarray(profile.A(mus), dtype=float)
    dA = np.asarray(profile.dA(mus), dtype=float)
    gap = np.asarray(profile.deficit(mus), dtype=float)
    a_start = float(profile.A(1.0 + 1e-9))
    checks = {
        "finite": bool(np.all(np.isfinite(A)) and np.all(np.isfinite(dA)) and np.all(np.isfinite(gap))),
        "vanishes_at_one": abs(a_start) <= 1e-6 * 2.0 * profile.B,
        "positive": bool(np.all(A > 0)),
        "below_2B": bool(np.all(gap > 0)),
        "derivative_positive": bool(np.all(dA > 0)),
        "increasing": bool(np.all(np.diff(A) > 0) or np.all(np.diff(-gap) > 0)),
        "B_positive": profile.B > 0,
        "A_inf_at_most_2B": profile.A_inf <= 2.0 * profile.B * (1 + 1e-12),
    }
    checks["valid"] = all(checks.values())
    return checks


# --- coefficient functions and the metric on V_mu -------------------------

def coefficients(profile, mu):
    if not mu > 1:
        raise UsageError(f"coefficients need mu > 1, got {mu}")
    A = float(profile.A(mu))
    a4 = 0.5 * float(profile.deficit(mu))
    r = (mu * mu - 1.0) / (mu * mu + 1.0)
    return MetricCoefficients(A0=float(profile.dA(mu)) / (4.0 * mu), A1=A * r, A2=A * r,
                              A3=2.0 * profile.B - a4, A4=a4)


def gamma_eval(coeffs, mu, t1, t2):
    """gamma_mu(t1, t2) for tangent vectors given in coordinates:

        A0 (dmu dmu' + 8 mu^2 <,>_p0) + A1 <,>_pmu + A2 <,>_p~mu + A3 <,>_p^ + A4 <,>_pv
    """
    if t1.k != t2.k:
        raise UsageError("coordinate dimension mismatch")
    m2 = mu * mu
    p0 = 2.0 * t1.lam * t2.lam
    pm = (1.0 + m2) * (t1.x * np.conj(t2.x)).real
    pt = (1.0 + m2) * (t1.y * np.conj(t2.y)).real
    ph = np.vdot(t2.u, t1.u).real
    pc = np.vdot(t2.v, t1.v).real
    return float(coeffs.A0 * (t1.t_mu * t2.t_mu + 8.0 * m2 * p0) + coeffs.A1 * pm
                 + coeffs.A2 * pt + coeffs.A3 * ph + coeffs.A4 * pc)


def omega(coeffs, mu, t1, t2):
    """Kaehler form omega(a, b) = gamma(J a, b)."""
    return gamma_eval(coeffs, mu, Jmap(t1, mu), t2)


# --- measurement by quadrature --------------------------------------------

def measure_profile(k, mu, grid, c1=4.0, c2=4.0):
    """(A, B) read off from L2 lengths: A_3 and A_4 are the squared lengths of
    unit vectors in p^ and pv. For k = 1 those blocks are empty; A is then
    recovered from the p_mu length and B is returned as None."""
    if abs(grid.c1 - c1) > 1e-15 * c1:
        raise UsageError(f"grid was built for c1={grid.c1}, not {c1}")
    if not mu > 1:
        raise UsageError(f"mu must exceed 1, got {mu}")
    if k == 1:
        f = tangent_field(mu, PCoords.pmu(1), grid)
        return l2_inner(f, f, c2=c2) / (mu * mu - 1.0), None
    fh = tangent_field(mu, PCoords.phat(k), grid)
    fc = tangent_field(mu, PCoords.pcheck(k), grid)
    a3 = l2_inner(fh, fh, c2=c2)
    a4 = l2_inner(fc, fc, c2=c2)
    return a3 - a4, 0.5 * (a3 + a4)


# --- closedness constraints -----------------------------------------------

def check_k1(coeffs, mu, X, Y, Z):
    """Cyclic sum omega([X,Y]_p, Z) + omega([Y,Z]_p, X) + omega([Z,X]_p, Y)."""
    r = (omega(coeffs, mu, bracket_p(X, Y, mu), Z)
         + omega(coeffs, mu, bracket_p(Y, Z, mu), X)
         + omega(coeffs, mu, bracket_p(Z, X, mu), Y))
    return abs(r)


def _coefficient_fn(profile):
    if hasattr(profile, "coefficients"):
        return profile.coefficients
    if callable(profile):
        return profile
    raise UsageError("expected a profile or a callable mu -> MetricCoefficients")


def check_k2(profile, mu, X, Y, h=None):
    """Residual of

        d/dmu omega(X, Y) - omega(dX/dmu, Y) - omega(X, dY/dmu) + omega(d/dmu, [X,Y]_p)

    for X, Y with fixed coordinates (their matrices move with mu). The total
    derivative is a Richardson-extrapolated central difference with steps h
    and 2h. ``profile`` may also be any callable mu -> MetricCoefficients.
    """
    coeff = _coefficient_fn(profile)
    if h is None:
        h = min(1e-3, (mu - 1.0) / 4.0)
    if not (h > 0 and mu - 2.0 * h > 1.0 and h > 1e-9 * mu):
        raise UsageError(f"step h={h} unusable at mu={mu} (need 0 < h and mu - 2h > 1)")
    if X.t_mu or Y.t_mu:
        raise UsageError("X and Y must lie in p (no d/dmu component)")

    def f(m):
        return omega(coeff(m), m, X, Y)

    def central(step):
        return (f(mu + step) - f(mu - step)) / (2.0 * step)

    total = (4.0 * central(h) - central(2.0 * h)) / 3.0
    co = coeff(mu)
    dX = project_p(embed_dmu(X, mu), mu)
    dY = project_p(embed_dmu(Y, mu), mu)
    r = (total - omega(co, mu, dX, Y) - omega(co, mu, X, dY)
         + omega(co, mu, PCoords.dmu(X.k), bracket_p(X, Y, mu)))
    return abs(r)


def kahler_generator_pairs(k):
    """The three (X, JX) pairs used to pin down A_0 and the derivatives of A_3, A_4."""
    pairs = [("pmu", PCoords.pmu(k, 1.0), PCoords.pmu(k, 1j))]
    if k >= 2:
        pairs.append(("phat", PCoords.phat(k, 0, 1.0), PCoords.phat(k, 0, 1j)))
        pairs.append(("pcheck", PCoords.pcheck(k, 0, 1.0), PCoords.pcheck(k, 0, 1j)))
    return pairs


def k1_reference_triples(k):
    """(pmu(1), p~mu(1), p0(1)) and, for k >= 2, (pmu(1), p^(e1), pv(i e1))."""
    triples = [("pmu-ptilde-p0", PCoords.pmu(k), PCoords.ptilde(k), PCoords.p0(k))]
    if k >= 2:
        triples.append(("pmu-phat-pcheck", PCoords.pmu(k), PCoords.phat(k, 0, 1.0),
                        PCoords.pcheck(k, 0, 1j)))
    return triples


# --- Fubini-Study pullback ------------------------------------------------

def fs_pullback_check(k, mu, c, xi):
    """Squared FS length of xi measured directly on CP^(2k+1) at
    flatten(phi_mu), alongside the value predicted by the FS profile."""
    M = phi_mu(mu, k).M
    dM = coords_velocity(mu, xi)
    embedded = fs_norm_sq(flatten(M), dM.T.reshape(-1), c)
    closed = gamma_eval(coefficients(fs_profile(c), mu), mu, xi, xi)
    return embedded, closed
