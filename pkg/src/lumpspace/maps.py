"""Degree-1 maps CP^1 -> CP^k as (k+1) x 2 matrices, the action of
G = U(k+1) x U(2), and tangent fields sampled on a quadrature grid.

A tangent vector to the moduli space at [M] is a matrix velocity dM; at the
domain point [z0, z1] it gives the lift velocity dM (z0, z1)^T over the base
lift M (z0, z1)^T. The L2 pairing integrates the Fubini-Study pairing of
these over the domain.
"""
from dataclasses import dataclass

import numpy as np

from lumpspace import _kernels
from lumpspace.errors import UsageError
from lumpspace.lie import LieElement, PCoords, embed_coords
from lumpspace.quadrature import integrate

RANK_RTOL = 1e-10


@dataclass(frozen=True, eq=False)
class HoloMap:
    """phi([z0, z1]) = [M (z0, z1)^T]; M is defined up to a nonzero scalar."""

    M: np.ndarray

    def __post_init__(self):
        M = np.array(self.M, dtype=complex)
        if M.ndim != 2 or M.shape[1] != 2 or M.shape[0] < 2:
            raise UsageError(f"expected a (k+1) x 2 matrix with k >= 1, got shape {M.shape}")
        M.setflags(write=False)
        object.__setattr__(self, "M", M)

    @property
    def k(self):
        return self.M.shape[0] - 1

    @property
    def singular_values(self):
        return np.linalg.svd(self.M, compute_uv=False)

    def is_rank2(self, rtol=RANK_RTOL):
        s = self.singular_values
        return bool(s[0] > 0 and s[1] > rtol * s[0])

    def __call__(self, z0, z1=1.0):
        return self.M @ np.array([z0, z1], dtype=complex)


@dataclass(frozen=True)
class ModuliConfig:
    k: int
    c1: float = 4.0
    c2: float = 4.0
    mu: float = 2.0

    def __post_init__(self):
        if int(self.k) != self.k or self.k < 1:
            raise UsageError(f"k must be a positive integer, got {self.k}")
        if not (self.c1 > 0 and self.c2 > 0):
            raise UsageError("curvatures must be positive")
        if not self.mu > 1:
            raise UsageError(f"mu must exceed 1 (the orbit mu = 1 is exceptional), got {self.mu}")


def phi_mu(mu, k):
    """Orbit representative [mu z0, z1, 0, ..., 0]."""
    if not mu >= 1:
        raise UsageError(f"canonical representatives need mu >= 1, got {mu}")
    if int(k) != k or k < 1:
        raise UsageError(f"k must be a positive integer, got {k}")
    M = np.zeros((k + 1, 2), complex)
    M[0, 0] = mu
    M[1, 1] = 1.0
    return HoloMap(M)


def _unitary(U, n, name):
    U = np.asarray(U, dtype=complex)
    if U.shape != (n, n):
        raise UsageError(f"{name} must be {n}x{n}, got {U.shape}")
    if np.max(np.abs(U.conj().T @ U - np.eye(n))) > 1e-12:
        raise UsageError(f"{name} is not unitary")
    return U


def g_act(U1, U2, M):
    """(U1, U2) . [M] = [U1 M U2^{-1}]."""
    M = M if isinstance(M, HoloMap) else HoloMap(M)
    U1 = _unitary(U1, M.k + 1, "U1")
    U2 = _unitary(U2, 2, "U2")
    return HoloMap(U1 @ M.M @ U2.conj().T)


@dataclass(frozen=True, eq=False)
class TangentField:
    """Per-node samples: base lifts ``w`` and lift velocities ``v``, both of
    shape (n_nodes, k+1)."""

    w: np.ndarray
    v: np.ndarray
    grid: object

    def __add__(self, other):
        _same_base(self, other)
        return TangentField(self.w, self.v + other.v, self.grid)

    def scale(self, s):
        return TangentField(self.w, s * self.v, self.grid)

    def times_i(self):
        return TangentField(self.w, 1j * self.v, self.grid)


def _same_base(f1, f2):
    if f1.grid is not f2.grid:
        raise UsageError("tangent fields were sampled on different grids")
    if f1.w is not f2.w and not np.array_equal(f1.w, f2.w):
        raise UsageError("tangent fields live over different base maps")


def matrix_velocity_field(M, dM, grid):
    """Field of the matrix velocity dM at [M]."""
    M = M.M if isinstance(M, HoloMap) else np.asarray(M, dtype=complex)
    dM = np.asarray(dM, dtype=complex)
    if dM.shape != M.shape:
        raise UsageError(f"velocity shape {dM.shape} does not match map shape {M.shape}")
    Z = grid.homogeneous
    return TangentField(np.ascontiguousarray(Z @ M.T), np.ascontiguousarray(Z @ dM.T), grid)


def pushforward_field(M, xi, grid):
    """d/dt [exp(tA) M exp(-tB)] at t = 0, i.e. dM = A M - M B."""
    M = M if isinstance(M, HoloMap) else HoloMap(M)
    if not isinstance(xi, LieElement):
        raise UsageError("expected a LieElement")
    if xi.k != M.k:
        raise UsageError(f"Lie element is for k={xi.k}, map has k={M.k}")
    return matrix_velocity_field(M, xi.A @ M.M - M.M @ xi.B, grid)


def mu_velocity_field(mu, k, grid):
    """Field of d/dmu along phi_mu: velocity (z0, 0, ..., 0)."""
    M = phi_mu(mu, k)
    dM = np.zeros_like(M.M)
    dM[0, 0] = 1.0
    return matrix_velocity_field(M, dM, grid)


def coords_velocity(mu, c):
    """Matrix velocity at phi_mu of the tangent vector with coordinates c."""
    M = phi_mu(mu, c.k).M
    xi = embed_coords(c, mu)
    dM = xi.A @ M - M @ xi.B
    dM[0, 0] += c.t_mu
    return dM


def tangent_field(mu, c, grid):
    """Field at phi_mu of t_mu d/dmu + embed(c)."""
    if not isinstance(c, PCoords):
        raise UsageError("expected PCoords")
    return matrix_velocity_field(phi_mu(mu, c.k), coords_velocity(mu, c), grid)


def l2_inner(f1, f2, grid=None, c2=4.0):
    """L2 pairing: integral over the domain of the Fubini-Study pairing."""
    _same_base(f1, f2)
    if grid is not None and grid is not f1.grid:
        raise UsageError("fields were not sampled on the given grid")
    dens = _kernels.fs_inner_density(f1.w, f1.v, f2.v, float(c2))
    return integrate(f1.grid, dens)


def l2_gram(fields, c2=4.0):
    n = len(fields)
    G = np.empty((n, n))
    for i in range(n):
        for j in range(i, n):
            G[i, j] = G[j, i] = l2_inner(fields[i], fields[j], c2=c2)
    return G


def gauge_defect(f1, f2, c=4.0):
    """Largest pointwise Fubini-Study length of f1 - f2; zero when the two
    fields agree up to the gauge direction along the lift. The horizontal
    part is formed explicitly, so the result has no square-root-of-roundoff
    floor."""
    _same_base(f1, f2)
    d = f1.v - f2.v
    w = f1.w
    ww = np.einsum("ij,ij->i", w.conj(), w).real
    r = d - w * (np.einsum("ij,ij->i", w.conj(), d) / ww)[:, None]
    length = np.sqrt(4.0 / c) * np.linalg.norm(r, axis=1) / np.sqrt(ww)
    return float(np.max(length))
