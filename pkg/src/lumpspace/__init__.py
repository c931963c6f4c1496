"""Numerical geometry of the moduli space of degree-1 lumps S^2 -> CP^k:
the L2 metric, its invariant Kaehler structure, volume forms and total
volumes, and the lump cylinder."""
from lumpspace._backend import backend_name
from lumpspace.errors import DomainError, LumpspaceError, NumericalError, UsageError
from lumpspace.projective import ProjectivePoint, flatten, fs_inner, fs_norm_sq, segre
from lumpspace.quadrature import QuadGrid, build_grid, integrate
from lumpspace.lie import LieElement, PCoords, Jmap, adK, bracket_p, frame_basis, ip, y_frame
from lumpspace.maps import HoloMap, ModuliConfig, g_act, l2_inner, phi_mu, pushforward_field, tangent_field
from lumpspace.kahler import (CustomProfile, KahlerProfile, MetricCoefficients, check_k1, check_k2,
                              coefficients, fs_profile, fs_pullback_check, gamma_eval, l2_profile,
                              measure_profile)
from lumpspace.volume import (BaptistaParams, alpha_const, baptista_volume, ray_length, total_volume,
                              total_volume_numeric, vol_g_mod_k, volume_factor_closed, volume_factor_gram)
from lumpspace.cylinder import CylinderSpec, cyl_density, cylinder_volume, fubini_crosscheck

__version__ = "0.1.0"
