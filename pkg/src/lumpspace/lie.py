"""The Lie algebra g = u(k+1) + u(2), the isotropy algebra of phi_mu and the
splitting of its orthogonal complement p into five Ad(K)-stable blocks.

Coordinates on V_mu = <d/dmu> + p are carried by :class:`PCoords`:

    t_mu  coefficient of d/dmu
    lam   p0    lam * (diag(i, -i, 0, ...), diag(-i, i))
    x     p_mu  off-diagonal (0,1) block, B coupled with factor mu
    y     p~mu  off-diagonal (0,1) block, A coupled with factor mu
    u     p^    column 0 against rows 2..k
    v     pv    column 1 against rows 2..k

Matrix indices are 0-based throughout.
"""
from dataclasses import dataclass, field

import numpy as np

from lumpspace.errors import NumericalError, UsageError

ANTIHERMITIAN_TOL = 1e-12


def _antihermitian_defect(X):
    return np.max(np.abs(X + X.conj().T)) if X.size else 0.0


@dataclass(frozen=True, eq=False)
class LieElement:
    """A pair (A, B) of anti-hermitian matrices, A in u(k+1), B in u(2)."""

    A: np.ndarray
    B: np.ndarray

    def __post_init__(self):
        A = np.array(self.A, dtype=complex)
        B = np.array(self.B, dtype=complex)
        if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] < 2:
            raise UsageError(f"A must be square of size >= 2, got {A.shape}")
        if B.shape != (2, 2):
            raise UsageError(f"B must be 2x2, got {B.shape}")
        scale = max(1.0, np.max(np.abs(A)), np.max(np.abs(B)))
        if max(_antihermitian_defect(A), _antihermitian_defect(B)) > ANTIHERMITIAN_TOL * scale:
            raise UsageError("Lie algebra elements must be anti-hermitian")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)

    @property
    def k(self):
        return self.A.shape[0] - 1

    @classmethod
    def zero(cls, k):
        return cls(np.zeros((k + 1, k + 1)), np.zeros((2, 2)))

    def __add__(self, other):
        return LieElement(self.A + other.A, self.B + other.B)

    def __sub__(self, other):
        return LieElement(self.A - other.A, self.B - other.B)

    def __neg__(self):
        return LieElement(-self.A, -self.B)

    def __mul__(self, s):
        s = float(s)
        return LieElement(s * self.A, s * self.B)

    __rmul__ = __mul__

    def bracket(self, other):
        return LieElement(self.A @ other.A - other.A @ self.A,
                          self.B @ other.B - other.B @ self.B)

    def adjoint(self, U1, U2):
        """Ad_(U1, U2): conjugation of each factor."""
        return LieElement(U1 @ self.A @ U1.conj().T, U2 @ self.B @ U2.conj().T)

    def norm(self):
        return np.sqrt(max(ip(self, self), 0.0))


def ip(xi, eta):
    """Ad-invariant inner product  -1/2 (tr A A' + tr B B')."""
    if xi.A.shape != eta.A.shape:
        raise UsageError(f"dimension mismatch: u({xi.A.shape[0]}) vs u({eta.A.shape[0]})")
    return float(-0.5 * (np.trace(xi.A @ eta.A) + np.trace(xi.B @ eta.B)).real)


@dataclass(frozen=True, eq=False)
class PCoords:
    """A tangent vector at phi_mu: d/dmu coefficient plus coordinates on p."""

    t_mu: float = 0.0
    lam: float = 0.0
    x: complex = 0j
    y: complex = 0j
    u: np.ndarray = field(default_factory=lambda: np.zeros(0, complex))
    v: np.ndarray = field(default_factory=lambda: np.zeros(0, complex))

    def __post_init__(self):
        u = np.array(self.u, dtype=complex).ravel()
        v = np.array(self.v, dtype=complex).ravel()
        if u.shape != v.shape:
            raise UsageError(f"u and v must have the same length, got {u.size} and {v.size}")
        object.__setattr__(self, "t_mu", float(self.t_mu))
        object.__setattr__(self, "lam", float(self.lam))
        object.__setattr__(self, "x", complex(self.x))
        object.__setattr__(self, "y", complex(self.y))
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "v", v)

    @property
    def k(self):
        return self.u.size + 1

    @classmethod
    def zero(cls, k):
        return cls(u=np.zeros(k - 1), v=np.zeros(k - 1))

    @classmethod
    def dmu(cls, k, s=1.0):
        return cls(t_mu=s, u=np.zeros(k - 1), v=np.zeros(k - 1))

    @classmethod
    def p0(cls, k, lam=1.0):
        return cls(lam=lam, u=np.zeros(k - 1), v=np.zeros(k - 1))

    @classmethod
    def pmu(cls, k, x=1.0):
        return cls(x=x, u=np.zeros(k - 1), v=np.zeros(k - 1))

    @classmethod
    def ptilde(cls, k, y=1.0):
        return cls(y=y, u=np.zeros(k - 1), v=np.zeros(k - 1))

    @classmethod
    def phat(cls, k, j=0, s=1.0):
        u = np.zeros(k - 1, complex)
        u[j] = s
        return cls(u=u, v=np.zeros(k - 1))

    @classmethod
    def pcheck(cls, k, j=0, s=1.0):
        v = np.zeros(k - 1, complex)
        v[j] = s
        return cls(u=np.zeros(k - 1), v=v)

    def _combine(self, other, a, b):
        if self.k != other.k:
            raise UsageError(f"coordinate dimension mismatch: k={self.k} vs k={other.k}")
        return PCoords(a * self.t_mu + b * other.t_mu, a * self.lam + b * other.lam,
                       a * self.x + b * other.x, a * self.y + b * other.y,
                       a * self.u + b * other.u, a * self.v + b * other.v)

    def __add__(self, other):
        return self._combine(other, 1.0, 1.0)

    def __sub__(self, other):
        return self._combine(other, 1.0, -1.0)

    def __neg__(self):
        return self * -1.0

    def __mul__(self, s):
        s = float(s)
        return PCoords(s * self.t_mu, s * self.lam, s * self.x, s * self.y, s * self.u, s * self.v)

    __rmul__ = __mul__

    def to_real(self):
        """Real coordinate vector of length 4k + 2."""
        return np.concatenate([[self.t_mu, self.lam, self.x.real, self.x.imag, self.y.real, self.y.imag],
                               self.u.real, self.u.imag, self.v.real, self.v.imag])

    @classmethod
    def from_real(cls, vec, k):
        vec = np.asarray(vec, dtype=float)
        if vec.size != 4 * k + 2:
            raise UsageError(f"expected {4 * k + 2} real coordinates, got {vec.size}")
        m = k - 1
        u = vec[6:6 + m] + 1j * vec[6 + m:6 + 2 * m]
        v = vec[6 + 2 * m:6 + 3 * m] + 1j * vec[6 + 3 * m:]
        return cls(vec[0], vec[1], vec[2] + 1j * vec[3], vec[4] + 1j * vec[5], u, v)

    def max_abs(self):
        return float(np.max(np.abs(self.to_real())))

    def blocks(self):
        """The six components as separate PCoords (d/dmu, p0, pmu, p~mu, p^, pv)."""
        z = np.zeros(self.k - 1)
        return (PCoords(t_mu=self.t_mu, u=z, v=z), PCoords(lam=self.lam, u=z, v=z),
                PCoords(x=self.x, u=z, v=z), PCoords(y=self.y, u=z, v=z),
                PCoords(u=self.u, v=z), PCoords(u=z, v=self.v))


def _check_mu(mu):
    if not mu > 1:
        raise UsageError(f"mu must exceed 1 (generic orbit), got {mu}")


def embed_coords(c, mu, k=None):
    """The element of p with coordinates ``c`` at the orbit through phi_mu.
    The d/dmu coefficient is not part of g and is ignored."""
    _check_mu(mu)
    k = c.k if k is None else k
    if c.k != k:
        raise UsageError(f"coordinates carry {2 * (c.k - 1)} complex p^/pv entries; k={k} needs {2 * (k - 1)}")
    A = np.zeros((k + 1, k + 1), complex)
    B = np.zeros((2, 2), complex)
    lam, x, y = c.lam, c.x, c.y
    A[0, 0] += 1j * lam
    A[1, 1] += -1j * lam
    B[0, 0] += -1j * lam
    B[1, 1] += 1j * lam
    A[0, 1] += x - mu * np.conj(y)
    A[1, 0] += -np.conj(x) + mu * y
    B[0, 1] += mu * x - np.conj(y)
    B[1, 0] += -mu * np.conj(x) + y
    if k > 1:
        A[0, 2:] = -np.conj(c.u)
        A[2:, 0] = c.u
        A[1, 2:] = -np.conj(c.v)
        A[2:, 1] = c.v
    return LieElement(A, B)


def embed_dmu(c, mu):
    """mu-derivative of embed_coords(c, mu) at fixed coordinates; only the
    p_mu and p~_mu blocks move with mu."""
    _check_mu(mu)
    k = c.k
    A = np.zeros((k + 1, k + 1), complex)
    B = np.zeros((2, 2), complex)
    A[0, 1] = -np.conj(c.y)
    A[1, 0] = c.y
    B[0, 1] = c.x
    B[1, 0] = -np.conj(c.x)
    return LieElement(A, B)


def project_p(xi, mu):
    """Component of ``xi`` in p = k^perp, returned as coordinates.

    p0 is orthogonal to everything else, and the p^/pv entries are read off
    directly. p_mu and p~_mu together fill the off-diagonal corner of the
    top 2x2 blocks, but they are not orthogonal to each other, so x and y
    come from solving  x - mu conj(y) = A01,  mu x - conj(y) = B01.
    """
    _check_mu(mu)
    k = xi.k
    A, B = xi.A, xi.B
    lam = 0.25 * (A[0, 0] - A[1, 1] - B[0, 0] + B[1, 1]).imag
    a, b = A[0, 1], B[0, 1]
    x = (mu * b - a) / (mu * mu - 1.0)
    y = np.conj(mu * x - b)
    return PCoords(0.0, float(lam), complex(x), complex(y),
                   np.array(A[2:, 0], complex), np.array(A[2:, 1], complex))


def k_part(xi, mu):
    """Residual xi - embed(project_p(xi)); lies in the isotropy algebra."""
    return xi - embed_coords(project_p(xi, mu), mu, xi.k)


def bracket_p(a, b, mu):
    """p-component of the matrix commutator of two elements of p."""
    return project_p(embed_coords(a, mu).bracket(embed_coords(b, mu)), mu)


# --- isotropy group K = T^3 x U(k-1) --------------------------------------

def _check_unitary(U, name="U"):
    U = np.asarray(U, dtype=complex)
    if U.ndim != 2 or U.shape[0] != U.shape[1]:
        raise UsageError(f"{name} must be square")
    if U.size and np.max(np.abs(U.conj().T @ U - np.eye(U.shape[0]))) > 1e-12:
        raise UsageError(f"{name} is not unitary")
    return U


def isotropy_element(k, xi=0.0, alpha=0.0, beta=0.0, U=None):
    """The pair (U1, U2) in G for the parameters (e^{i xi}, e^{i alpha}, e^{i beta}, U)."""
    U = np.eye(k - 1) if U is None else _check_unitary(U)
    if U.shape != (k - 1, k - 1):
        raise UsageError(f"U must be ({k - 1}x{k - 1})")
    U1 = np.zeros((k + 1, k + 1), complex)
    U1[0, 0] = np.exp(1j * alpha)
    U1[1, 1] = np.exp(1j * beta)
    U1[2:, 2:] = U
    U2 = np.diag([np.exp(1j * (alpha + xi)), np.exp(1j * (beta + xi))])
    return U1, U2


def isotropy_algebra_element(k, xi=0.0, alpha=0.0, beta=0.0, X=None):
    """Tangent of isotropy_element at the identity; X in u(k-1)."""
    X = np.zeros((k - 1, k - 1)) if X is None else np.asarray(X, dtype=complex)
    A = np.zeros((k + 1, k + 1), complex)
    A[0, 0] = 1j * alpha
    A[1, 1] = 1j * beta
    A[2:, 2:] = X
    B = np.diag([1j * (alpha + xi), 1j * (beta + xi)])
    return LieElement(A, B)


def adK(kelt, c):
    """Adjoint action of (e^{i xi}, e^{i alpha}, e^{i beta}, U) on coordinates:
    (lam, e^{i(a-b)} x, e^{-i(a-b)} y, e^{-i a} U u, e^{-i b} U v)."""
    _xi, alpha, beta, U = kelt
    U = np.eye(c.k - 1) if U is None else _check_unitary(U)
    if U.shape != (c.k - 1, c.k - 1):
        raise UsageError(f"U must be ({c.k - 1}x{c.k - 1})")
    ph = np.exp(1j * (alpha - beta))
    return PCoords(c.t_mu, c.lam, ph * c.x, c.y / ph,
                   np.exp(-1j * alpha) * (U @ c.u), np.exp(-1j * beta) * (U @ c.v))


def Jmap(c, mu):
    """Almost complex structure on V_mu.

    Multiplication by i on p_mu, p~_mu, p^ and pv; on the real plane
    spanned by d/dmu and p0 it is  lam -> -4 mu lam d/dmu  and
    d/dmu -> p0(1 / (4 mu)), which is what the complex structure of the
    ambient CP^(2k+1) induces through the pushforward of
    t -> exp(tA) M exp(-tB).
    """
    _check_mu(mu)
    return PCoords(-4.0 * mu * c.lam, c.t_mu / (4.0 * mu), 1j * c.x, 1j * c.y, 1j * c.u, 1j * c.v)


# --- orthonormal frames ---------------------------------------------------

@dataclass(frozen=True, eq=False)
class FrameBasis:
    """Y: orthonormal for dmu^2 + <,>_p.  X: orthonormal for the metric whose
    coefficients were supplied."""

    Y: list
    X: list
    mu: float
    profile: object = None


def y_frame(mu, k):
    """The 4k+2 vectors d/dmu, Y_2..Y_6, Y^_1..Y^_{2k-2}, Yv_1..Yv_{2k-2}."""
    _check_mu(mu)
    z = np.zeros(k - 1)
    s2 = 1.0 / np.sqrt(2.0)
    e01 = np.zeros((2, 2))
    e01[0, 1] = 1.0
    e10 = e01.T

    def lift(A2, B2):
        A = np.zeros((k + 1, k + 1), complex)
        A[:2, :2] = A2
        return project_p(LieElement(A, B2), mu)

    Y = [PCoords(t_mu=1.0, u=z, v=z),
         PCoords(lam=s2, u=z, v=z),
         lift(e01 - e10, np.zeros((2, 2))),
         lift(1j * (e01 + e10), np.zeros((2, 2))),
         lift(np.zeros((2, 2)), -e01 + e10),
         lift(np.zeros((2, 2)), 1j * (e01 + e10))]
    Y += [PCoords.phat(k, j, s) for j in range(k - 1) for s in (1.0, 1j)]
    Y += [PCoords.pcheck(k, j, s) for j in range(k - 1) for s in (1.0, 1j)]
    return Y


def frame_basis(mu, k, profile):
    """Y-frame plus its rescaling X to an orthonormal frame of the metric
    defined by ``profile`` (anything with a ``coefficients(mu)`` method)."""
    co = profile.coefficients(mu)
    vals = (co.A0, co.A1, co.A2, co.A3, co.A4)
    if not all(np.isfinite(a) and a > 0 for a in vals):
        raise NumericalError(f"metric coefficients not positive at mu={mu}: {vals}")
    Y = y_frame(mu, k)
    n1 = np.sqrt((1.0 + mu * mu) * co.A1)
    n2 = np.sqrt((1.0 + mu * mu) * co.A2)
    X = [Y[0] * (1.0 / np.sqrt(co.A0)),
         Y[1] * (1.0 / (mu * np.sqrt(8.0 * co.A0))),
         (Y[2] - Y[4] * mu) * (1.0 / n1),
         (Y[3] + Y[5] * mu) * (1.0 / n1),
         (Y[2] * -mu + Y[4]) * (1.0 / n2),
         (Y[3] * mu + Y[5]) * (1.0 / n2)]
    m = 2 * (k - 1)
    X += [y * (1.0 / np.sqrt(co.A3)) for y in Y[6:6 + m]]
    X += [y * (1.0 / np.sqrt(co.A4)) for y in Y[6 + m:]]
    return FrameBasis(Y=Y, X=X, mu=float(mu), profile=profile)


# --- sampling helpers -----------------------------------------------------

def random_unitary(n, rng):
    """Haar-distributed unitary via QR with phase correction."""
    Z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2.0)
    Q, R = np.linalg.qr(Z)
    d = np.diag(R)
    return Q * (d / np.abs(d))


def random_lie(k, rng):
    def anti(n):
        Z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        return 0.5 * (Z - Z.conj().T)
    return LieElement(anti(k + 1), anti(2))


def random_pcoords(k, rng, with_mu=False):
    vec = rng.standard_normal(4 * k + 2)
    if not with_mu:
        vec[0] = 0.0
    return PCoords.from_real(vec, k)
