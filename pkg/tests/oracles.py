"""Independent reference computations (mpmath, closed forms evaluated from
scratch). Nothing here imports the package's numerical code."""
import math

import mpmath as mp

mp.mp.dps = 50

# frozen at 40 digits with mpmath from the closed-form L2 profile, c1 = c2 = 4
L2_AT_2 = {
    "A": 1.364723595443251609880958708598968900616,
    "A0": 0.1083816659813800694159640252851526728964,
    "A1": 0.8188341572659509659285752251593813403694,
    "A3": 2.253158124516522424171801045939235892406,
    "A4": 0.8884345290732708142908423373402669917908,
}
# ray length to infinity (mpmath tanh-sinh in s = 1/mu)
L2_RAY_INFINITY = 1.6308119320196
L2_RAY_1E3 = 1.6242393172795653
L2_RAY_1E6 = 1.6308026208149805


def l2_A(mu, c1=4, c2=4):
    mu = mp.mpf(mu)
    C = 16 * mp.pi / (c1 * c2)
    return C * (mu ** 4 - 4 * mu ** 2 * mp.log(mu) - 1) / (mu ** 2 - 1) ** 2


def l2_dA(mu, c1=4, c2=4):
    return mp.diff(lambda m: l2_A(m, c1, c2), mp.mpf(mu))


def vol_unitary_haar(n):
    """Vol U(n) for the metric -1/2 tr(XY), built from the fibrations
    U(m)/U(m-1) = S^(2m-1). The horizontal lift of the orbit map g -> g e_1
    makes the sphere a Berger sphere: Euclidean across the Hopf fibres and
    shrunk by 1/sqrt 2 along them, so each step contributes
    Vol(S^(2m-1)) / sqrt 2."""
    vol = 1.0
    for m in range(1, n + 1):
        vol *= 2.0 * math.pi ** m / math.gamma(m) / math.sqrt(2.0)
    return vol


def vol_g_mod_k_fibration(k):
    """Vol(U(k+1) x U(2)) / Vol(T^3 x U(k-1)); the torus lattice has
    covolume (2 pi)^3 and generator Gram determinant 1/2."""
    torus = (2.0 * math.pi) ** 3 * math.sqrt(0.5)
    return vol_unitary_haar(k + 1) * vol_unitary_haar(2) / (torus * vol_unitary_haar(k - 1))
