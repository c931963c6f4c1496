"""Hot inner loops: per-node Fubini-Study pairings, ordered reductions and the
cylinder double sums.

Every kernel exists twice: a numba ``@njit`` version and a pure-numpy
version with the same arithmetic. The public names at the bottom of the
module point at whichever backend ``_backend`` selected; the suffixed names
stay importable so the benchmark can time both.
"""
import math

import numpy as np

from lumpspace._backend import HAS_NUMBA, numba

_NUMPY_CHUNK = 2048


# --------------------------------------------------------------------------
# numpy reference path
# --------------------------------------------------------------------------

def fs_inner_density_numpy(w, v1, v2, c):
    ww = np.einsum("ij,ij->i", w.conj(), w).real
    a = np.einsum("ij,ij->i", v1.conj(), v2)
    b1 = np.einsum("ij,ij->i", w.conj(), v1)
    b2 = np.einsum("ij,ij->i", w.conj(), v2)
    h = (a * ww - b1.conj() * b2) / (ww * ww)
    return (4.0 / c) * h.real


def pairwise_sum_numpy(x):
    x = np.array(x, dtype=np.float64, copy=True).ravel()
    if x.size == 0:
        return 0.0
    while x.size > 1:
        if x.size % 2:
            x = np.append(x, 0.0)
        x = x[0::2] + x[1::2]
    return float(x[0])


def _softplus_numpy(x):
    return np.maximum(x, 0.0) + np.log1p(np.exp(-np.abs(x)))


def _radial_weights_numpy(d, v_nodes):
    # r^(2d+2)/(1+r^2)^2 and r^(2d) at r = e^v, the former via softplus
    w = np.exp((2 * d + 2) * v_nodes - 2.0 * _softplus_numpy(2.0 * v_nodes))
    return w, np.exp(2.0 * d * v_nodes)


def cylinder_radial_numpy(log_rho, d, v_nodes, h_v):
    """Trapezoid sums  h_v * sum_j r^(2d+2) / ((1+r^2)^2 (1+rho^2 r^(2d))^2)
    with r = exp(v_j), one per entry of ``log_rho``. Overflow of rho^2 r^(2d)
    sends the term to its correct limit 0."""
    out = np.empty(log_rho.shape[0])
    rows = max(1, _NUMPY_CHUNK * 64 // max(v_nodes.size, 1))
    with np.errstate(over="ignore"):
        w, e = _radial_weights_numpy(d, v_nodes)
        r2 = np.exp(2.0 * log_rho)
        for start in range(0, log_rho.shape[0], rows):
            q = r2[start:start + rows, None] * e[None, :]
            out[start:start + q.shape[0]] = h_v * (w[None, :] / ((1.0 + q) * (1.0 + q))).sum(axis=1)
    return out


def dilation_inner_numpy(log_a, u_nodes, h_u):
    """Trapezoid sums  h_u * sum_j q / (1 + q)^2,  q = rho_j^2 a,  rho_j = exp(u_j);
    the exact value is 1/2 for every a > 0. Written as 1/(q + 2 + 1/q) so
    that q = 0 and q = inf both give 0."""
    out = np.empty(log_a.shape[0])
    rows = max(1, _NUMPY_CHUNK * 64 // max(u_nodes.size, 1))
    with np.errstate(over="ignore", divide="ignore"):
        p = np.exp(2.0 * u_nodes)
        a = np.exp(log_a)
        for start in range(0, log_a.shape[0], rows):
            q = a[start:start + rows, None] * p[None, :]
            out[start:start + q.shape[0]] = h_u * (1.0 / (q + 2.0 + 1.0 / q)).sum(axis=1)
    return out


# --------------------------------------------------------------------------
# numba path
# --------------------------------------------------------------------------

if HAS_NUMBA:

    @numba.njit(parallel=True, cache=True)
    def fs_inner_density_numba(w, v1, v2, c):
        n, m = w.shape
        out = np.empty(n)
        scale = 4.0 / c
        for i in numba.prange(n):
            ww = 0.0
            a = 0j
            b1 = 0j
            b2 = 0j
            for j in range(m):
                wc = w[i, j].conjugate()
                ww += (wc * w[i, j]).real
                a += v1[i, j].conjugate() * v2[i, j]
                b1 += wc * v1[i, j]
                b2 += wc * v2[i, j]
            h = (a * ww - b1.conjugate() * b2) / (ww * ww)
            out[i] = scale * h.real
        return out

    @numba.njit(cache=True)
    def pairwise_sum_numba(x):
        n = x.size
        if n == 0:
            return 0.0
        buf = x.ravel().astype(np.float64)
        while n > 1:
            half = (n + 1) // 2
            for i in range(half):
                j = 2 * i + 1
                buf[i] = buf[2 * i] + (buf[j] if j < n else 0.0)
            n = half
        return buf[0]

    @numba.njit(cache=True)
    def _radial_weights_numba(d, v_nodes):
        m = v_nodes.shape[0]
        w = np.empty(m)
        e = np.empty(m)
        for j in range(m):
            v = v_nodes[j]
            sp = max(2.0 * v, 0.0) + math.log1p(math.exp(-abs(2.0 * v)))
            w[j] = math.exp((2 * d + 2) * v - 2.0 * sp)
            e[j] = math.exp(2.0 * d * v)
        return w, e

    @numba.njit(parallel=True, cache=True)
    def cylinder_radial_numba(log_rho, d, v_nodes, h_v):
        n = log_rho.shape[0]
        m = v_nodes.shape[0]
        w, e = _radial_weights_numba(d, v_nodes)
        out = np.empty(n)
        for i in numba.prange(n):
            r2 = math.exp(2.0 * log_rho[i])
            s = 0.0
            for j in range(m):
                q1 = 1.0 + r2 * e[j]
                s += w[j] / (q1 * q1)
            out[i] = h_v * s
        return out

    @numba.njit(parallel=True, cache=True)
    def dilation_inner_numba(log_a, u_nodes, h_u):
        n = log_a.shape[0]
        m = u_nodes.shape[0]
        p = np.empty(m)
        for j in range(m):
            p[j] = math.exp(2.0 * u_nodes[j])
        out = np.empty(n)
        for i in numba.prange(n):
            a = math.exp(log_a[i])
            s = 0.0
            for j in range(m):
                q = a * p[j]
                s += 1.0 / (q + 2.0 + 1.0 / q)
            out[i] = h_u * s
        return out

    fs_inner_density = fs_inner_density_numba
    pairwise_sum = pairwise_sum_numba
    cylinder_radial = cylinder_radial_numba
    dilation_inner = dilation_inner_numba
else:
    fs_inner_density = fs_inner_density_numpy
    pairwise_sum = pairwise_sum_numpy
    cylinder_radial = cylinder_radial_numpy
    dilation_inner = dilation_inner_numpy
