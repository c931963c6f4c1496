"""Points of complex projective space and Fubini-Study tangent norms."""
from dataclasses import dataclass

import numpy as np

from lumpspace.errors import DomainError, UsageError

PROJECTIVE_RTOL = 1e-12


@dataclass(frozen=True, eq=False)
class ProjectivePoint:
    """A point of CP^N given by any nonzero lift in C^(N+1).

    ``excluded`` marks points built from rank-deficient matrices (the Segre
    variety that is not part of the moduli space).
    """

    lift: np.ndarray
    excluded: bool = False

    def __post_init__(self):
        lift = np.asarray(self.lift, dtype=complex).ravel()
        if lift.size < 2:
            raise UsageError("a projective point needs at least two homogeneous coordinates")
        if not np.any(lift != 0):
            raise DomainError("the zero vector is not a point of projective space")
        lift.setflags(write=False)
        object.__setattr__(self, "lift", lift)

    @property
    def dim(self):
        return self.lift.size - 1

    def __eq__(self, other):
        if not isinstance(other, ProjectivePoint):
            return NotImplemented
        return same_point(self.lift, other.lift)

    __hash__ = None


def same_point(w1, w2, rtol=PROJECTIVE_RTOL):
    """True when the two lifts are proportional: every 2x2 minor of the pair
    vanishes relative to the product of their norms."""
    w1 = np.asarray(w1, dtype=complex).ravel()
    w2 = np.asarray(w2, dtype=complex).ravel()
    if w1.shape != w2.shape:
        return False
    minors = np.outer(w1, w2) - np.outer(w2, w1)
    return bool(np.max(np.abs(minors)) <= rtol * np.linalg.norm(w1) * np.linalg.norm(w2))


def _check(w, v):
    w = np.asarray(w.lift if isinstance(w, ProjectivePoint) else w, dtype=complex).ravel()
    v = np.asarray(v, dtype=complex).ravel()
    if w.shape != v.shape:
        raise UsageError(f"velocity has length {v.size}, lift has length {w.size}")
    if not np.any(w != 0):
        raise DomainError("zero lift")
    return w, v


def fs_hermitian(w, v1, v2):
    """Hermitian Fubini-Study pairing at curvature 4 (no 4/c prefactor)."""
    ww = np.vdot(w, w).real
    return (np.vdot(v1, v2) * ww - np.vdot(v1, w) * np.vdot(w, v2)) / ww ** 2


def fs_norm_sq(w, v, c=4.0):
    """Squared length of the tangent vector represented by the lift velocity
    ``v`` at ``w``, for the metric of holomorphic sectional curvature ``c``:

        (4/c) [ |v|^2 |w|^2 - |<w, v>|^2 ] / |w|^4
    """
    if c <= 0:
        raise UsageError("curvature must be positive")
    w, v = _check(w, v)
    ww = np.vdot(w, w).real
    num = np.vdot(v, v).real * ww - abs(np.vdot(w, v)) ** 2
    return max(0.0, (4.0 / c) * num / ww ** 2)


def fs_inner(w, v1, v2, c=4.0):
    """Real Riemannian inner product; the real part of the hermitian pairing."""
    if c <= 0:
        raise UsageError("curvature must be positive")
    w, v1 = _check(w, v1)
    _, v2 = _check(w, v2)
    return float((4.0 / c) * fs_hermitian(w, v1, v2).real)


def horizontal(w, v):
    """Component of ``v`` orthogonal to the lift; kills the gauge direction."""
    w, v = _check(w, v)
    return v - (np.vdot(w, v) / np.vdot(w, w)) * w


def flatten(M, rank_rtol=1e-10):
    """Read a (k+1) x 2 matrix as the point [a_0, ..., a_k, b_0, ..., b_k] of
    CP^(2k+1) (first column, then second). Rank-deficient matrices give a
    valid point with ``excluded=True``."""
    M = np.asarray(getattr(M, "M", M), dtype=complex)
    if M.ndim != 2 or M.shape[1] != 2 or M.shape[0] < 2:
        raise UsageError(f"expected a (k+1) x 2 matrix, got shape {M.shape}")
    s = np.linalg.svd(M, compute_uv=False)
    excluded = bool(s[0] == 0 or s[1] <= rank_rtol * s[0])
    return ProjectivePoint(M.T.reshape(-1), excluded=excluded)


def segre(x, y):
    """Segre image [x0 y_0, ..., x0 y_k, x1 y_0, ..., x1 y_k] of ([x], [y])."""
    x = np.asarray(x, dtype=complex).ravel()
    y = np.asarray(y, dtype=complex).ravel()
    if x.size != 2:
        raise UsageError("first factor must lie in CP^1")
    return ProjectivePoint(np.concatenate([x[0] * y, x[1] * y]))
