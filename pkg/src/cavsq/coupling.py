# ---------------------------------------------------------------------------- #
# SPDX-License-Identifier: MIT-0
#
# Plane-wave coupling factors K(Δk) = K_r + iK_i of the phase mismatched
# second-order interaction.
# ---------------------------------------------------------------------------- #
from __future__ import annotations

import math
from typing import Optional

from aws_lambda_powertools import Logger
from scipy import integrate, optimize

from .constants import SERIES_THRESHOLD, SERVICE_NAME
from .types import CavityConfig, CouplingFactors

logger = Logger(service=SERVICE_NAME, child=True)


def _sinc(u: float) -> float:
    if u == 0.0:
        return 1.0
    return math.sin(u) / u


def _k_i_series(x: float) -> float:
    # 2(sin x − x)/x² = −x/3 + x³/60 − x⁵/2520 + x⁷/181440 − x⁹/19958400
    x2 = x * x
    return x * (-1.0 / 3.0 + x2 * (1.0 / 60.0 + x2 * (-1.0 / 2520.0 + x2 * (1.0 / 181440.0 - x2 / 19958400.0))))


def coupling_factors(dkl: float, nu: Optional[float] = None) -> CouplingFactors:
    """Coupling factors for a dimensionless mismatch x = Δk·L_m.

    k_r = sinc²(x/2) and k_i = (2/x)[sinc(x/2)cos(x/2) − 1] = 2(sin x − x)/x².
    Close to the origin k_i is summed from its Taylor series, the closed form
    loses digits to cancellation there.

    Args:
        dkl (float): the mismatch x, finite
        nu (Optional[float]): when given, μ = ν·k_r and Γ = ν·k_i are filled in

    Returns:
        CouplingFactors: the pair (k_r, k_i) and optionally (μ, Γ)

    Examples:
        >>> coupling_factors(0.0).k_r
        1.0
    """
    if not math.isfinite(dkl):
        raise ValueError(f"phase mismatch must be finite, got {dkl!r}")

    k_r = min(_sinc(0.5 * dkl) ** 2, 1.0)
    if abs(dkl) < SERIES_THRESHOLD:
        k_i = _k_i_series(dkl)
    else:
        k_i = 2.0 * (math.sin(dkl) - dkl) / (dkl * dkl)

    factors = CouplingFactors(k_r=k_r, k_i=k_i)
    if nu is not None:
        factors = factors.with_strength(nu)
    return factors


def for_config(cfg: CavityConfig) -> CouplingFactors:
    return coupling_factors(cfg.dkl, nu=cfg.nu)


def ki2_minus_3kr2(dkl: float) -> float:
    """k_i² − 3k_r²; an SHG-like harmonic instability needs it positive."""
    factors = coupling_factors(dkl)
    return factors.k_i**2 - 3.0 * factors.k_r**2


def shg_like_window(lo: float = math.pi, hi: float = 2.0 * math.pi) -> float:
    """Locate the sign change of k_i² − 3k_r² between `lo` and `hi` by bisection."""
    root = optimize.bisect(ki2_minus_3kr2, lo, hi, xtol=1e-14, maxiter=200)
    logger.debug("SHG-like window edge", extra={"dkl": root})
    return root


def plane_wave_overlap(dkl: float) -> complex:
    """K(Δk) = 2∫₀¹∫₀^z u*(z)u(z′) dz′ dz for plane waves, by quadrature.

    Only used to cross-check the closed forms.
    """

    def real_part(z_prime: float, z: float) -> float:
        return math.cos(dkl * (z - z_prime))

    def imag_part(z_prime: float, z: float) -> float:
        return -math.sin(dkl * (z - z_prime))

    opts = {"epsabs": 1e-13, "epsrel": 1e-13}
    re, _ = integrate.dblquad(real_part, 0.0, 1.0, 0.0, lambda z: z, **opts)
    im, _ = integrate.dblquad(imag_part, 0.0, 1.0, 0.0, lambda z: z, **opts)
    return complex(2.0 * re, 2.0 * im)
