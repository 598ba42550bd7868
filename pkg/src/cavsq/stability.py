# ---------------------------------------------------------------------------- #
# SPDX-License-Identifier: MIT-0
#
# Linear stability of fixed points and the closed-form instability manifolds.
# ---------------------------------------------------------------------------- #
from __future__ import annotations

import cmath
import math
from typing import Optional

import numpy as np
from aws_lambda_powertools import Logger

from .constants import MANIFOLD_TOL, SERVICE_NAME
from .core import effective_gain
from .types import CavityConfig, CouplingFactors, StabilityReport, SteadyState

logger = Logger(service=SERVICE_NAME, child=True)


def _report(
    gamma_t: float, detuning: float, b_mod: float
) -> StabilityReport:
    # λ± = −γ_t ± √(|B|² − (δ + 2Γn)²), complex root for a negative radicand
    root = cmath.sqrt(b_mod**2 - detuning**2)
    return StabilityReport.from_eigenvalues(-gamma_t + root, -gamma_t - root, gamma_t)


def eigenvalues(cfg: CavityConfig, cf: CouplingFactors, ss: SteadyState) -> StabilityReport:
    """Drift eigenvalues of the fluctuations around a fixed point, in rate units.

    Args:
        cfg (CavityConfig): the cavity
        cf (CouplingFactors): coupling factors for cfg.dkl
        ss (SteadyState): the fixed point

    Returns:
        StabilityReport: λ± = −(γ + 2μn) ± √(|B|² − (δ + 2Γn)²)
    """
    mu, gamma_cap = cf.nonlinear_rates(cfg.nu)
    gain = effective_gain(cfg, cf, ss)
    report = _report(
        cfg.gamma + 2.0 * mu * ss.n,
        cfg.delta + 2.0 * gamma_cap * ss.n,
        abs(gain.b_raw),
    )
    if not report.stable:
        logger.debug(
            "Unstable fixed point",
            extra={"n": ss.n, "max_real": report.max_real},
        )
    return report


def drift_matrix(cfg: CavityConfig, cf: CouplingFactors, ss: SteadyState) -> np.ndarray:
    """The 2×2 drift matrix acting on (δa, δa†)."""
    mu, gamma_cap = cf.nonlinear_rates(cfg.nu)
    b_raw = effective_gain(cfg, cf, ss).b_raw
    diagonal = complex(cfg.gamma + 2.0 * mu * ss.n, cfg.delta + 2.0 * gamma_cap * ss.n)
    return np.array(
        [
            [-diagonal, b_raw],
            [b_raw.conjugate(), -diagonal.conjugate()],
        ],
        dtype=complex,
    )


def hat_eigenvalues(
    m: float, eta_in: complex, delta_hat: float, cf: CouplingFactors
) -> StabilityReport:
    """Drift eigenvalues in units of γ for a hat-normalized operating point."""
    b_hat = math.sqrt(cf.k_r) * eta_in - complex(cf.k_r, cf.k_i) * m
    return _report(1.0 + 2.0 * cf.k_r * m, delta_hat + 2.0 * cf.k_i * m, abs(b_hat))


def kerr_turning_points(m: float, k_i: float) -> Optional[tuple[float, float]]:
    """Detunings δ̂± = −2mK_i ± √(m²K_i² − 1) of dispersive bistability.

    Returns:
        Optional[tuple[float, float]]: (δ̂₋, δ̂₊), None when the root is complex
    """
    discriminant = (m * k_i) ** 2 - 1.0
    if discriminant < 0.0:
        return None
    center, half_width = -2.0 * m * k_i, math.sqrt(discriminant)
    return center - half_width, center + half_width


def shg_instability_detunings(
    m: float, cf: CouplingFactors
) -> Optional[tuple[float, float]]:
    """Detunings where an undriven harmonic (β_in = 0) fixed point loses stability.

    δ̂± = −2mK_i ± √(m²(K_i² − 3K_r²) − 4K_r·m − 1)
    """
    discriminant = m**2 * (cf.k_i**2 - 3.0 * cf.k_r**2) - 4.0 * cf.k_r * m - 1.0
    if discriminant < 0.0:
        return None
    center, half_width = -2.0 * m * cf.k_i, math.sqrt(discriminant)
    return center - half_width, center + half_width


def driven_instability_eta(m: float) -> tuple[float, float]:
    """Real harmonic drives η_in solving 1 + 2m = |η_in − m| (phase matched, δ̂ = 0)."""
    return -(1.0 + m), 1.0 + 3.0 * m


def reference_instability_check(
    b_tilde: complex | float, delta_big: float, tol: float = MANIFOLD_TOL
) -> bool:
    """True when (|B̃|, Δ) sits on the manifold 1 + Δ² = |B̃|²."""
    edge = 1.0 + delta_big**2
    return abs(abs(b_tilde) ** 2 - edge) <= tol * edge
