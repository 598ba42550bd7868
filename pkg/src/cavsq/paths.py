# ---------------------------------------------------------------------------- #
# SPDX-License-Identifier: MIT-0
#
# Optimum paths and parameter scans of the zero-frequency squeezing, all in
# hat units (rates over γ, m = νn/γ, η_in relative to the OPO threshold).
# ---------------------------------------------------------------------------- #
from __future__ import annotations

import cmath
import math
from typing import Iterable, Optional, Sequence

import numpy as np
from aws_lambda_powertools import Logger
from scipy import optimize

from .constants import (
    COARSE_DKL_MAX,
    COARSE_DKL_SAMPLES,
    DENOMINATOR_TOL,
    GOLDEN_TOL,
    INSTABILITY_OFFSET,
    KERR_DKL,
    SERVICE_NAME,
)
from .coupling import coupling_factors
from .reference_model import optimized_noise, reference_spectrum
from .settings import parallel_map
from .spectra import hat_spectra, harmonic_output_power, s_m_bound
from .stability import hat_eigenvalues, shg_instability_detunings
from .steady_state import normalized_drive
from .types import CouplingFactors, PathCurve, PathSample

logger = Logger(service=SERVICE_NAME, child=True)

PHASE_MATCHED = CouplingFactors(k_r=1.0, k_i=0.0)
# At x = 2π the coupling is purely dispersive with K_i = −1/π
KERR_FACTORS = CouplingFactors(k_r=0.0, k_i=-1.0 / math.pi)


def _drive_fields(
    m: float, eta_in: complex, delta_hat: float, cf: CouplingFactors
) -> dict[str, float | bool]:
    """Fundamental drive power of a prescribed state and whether it is feasible.

    At m > 0 a vanishing drive puts the state on the singular set of the phase
    recovery, where no single α_in reproduces it.
    """
    power = abs(normalized_drive(m, eta_in, delta_hat, cf)) ** 2
    scale = (
        1.0
        + abs(cf.k_r * m)
        + abs(delta_hat + cf.k_i * m)
        + math.sqrt(cf.k_r) * abs(eta_in)
    )
    feasible = bool(m == 0.0 or power > DENOMINATOR_TOL * m * scale**2)
    return {"drive_power": power, "feasible": feasible}


def _harmonic_sample(
    m: float,
    harmonic_drive: float,
    delta_hat: float,
    cf: CouplingFactors,
    **coordinates,
) -> PathSample:
    _, harmonic = hat_spectra(m, harmonic_drive, delta_hat, cf, 1.0, 0.0)
    return PathSample(
        m=m,
        delta_hat=delta_hat,
        s_minus=harmonic.s_minus,
        s_plus=harmonic.s_plus,
        s_bound=s_m_bound(m, cf.k_r),
        **_drive_fields(m, harmonic_drive, delta_hat, cf),
        stable=harmonic.physical,
        diverged=harmonic.diverged,
        **coordinates,
    )


# ----------------------------------------------------------------------
# Kerr-like branch: fundamental output, K_r = 0
def _kerr_sample(eta: float, m: float, delta_hat: float) -> PathSample:
    b_tilde = m / math.pi
    delta_big = delta_hat - 2.0 * m / math.pi
    s_ref = reference_spectrum(b_tilde, delta_big, 0.0)
    stable = hat_eigenvalues(m, 0.0, delta_hat, KERR_FACTORS).stable
    return PathSample(
        m=m,
        dkl=KERR_DKL,
        delta_hat=delta_hat,
        s_minus=1.0 + eta * s_ref.s_minus,
        s_plus=1.0 + eta * s_ref.s_plus,
        **_drive_fields(m, 0.0, delta_hat, KERR_FACTORS),
        stable=stable and not s_ref.diverged,
        diverged=s_ref.diverged,
    )


def kerr_fundamental_path(
    eta: float, m_max: float = math.pi, samples: int = 201
) -> PathCurve:
    """Zero-frequency fundamental noise along δ̂ = 2m/π, the Δ = 0 path at x = 2π.

    With μ = 0 the escape weight is η for every m and |B̃| = m/π, so
    S^a_− = 1 + η·:S_opt:(m/π), reaching 1 − η at the instability m = π.

    Args:
        eta (float): escape efficiency in (0, 1]
        m_max (float): last normalized photon number
        samples (int): number of points on [0, m_max]
    """
    if not 0.0 < eta <= 1.0:
        raise ValueError(f"escape efficiency must lie in (0, 1], got {eta}")
    samples_ = [
        _kerr_sample(eta, m, 2.0 * m / math.pi) for m in np.linspace(0.0, m_max, samples)
    ]
    return PathCurve(name=f"eta_{eta:g}", samples=samples_)


def kerr_fixed_detuning_curves(
    eta: float,
    delta_hat_list: Sequence[float] = (1.0, 2.0, 3.0),
    m_max: float = 1.5 * math.pi,
    samples: int = 201,
) -> list[PathCurve]:
    """Zero-frequency fundamental noise versus m at fixed detunings δ̂."""
    grid = np.linspace(0.0, m_max, samples)
    return [
        PathCurve(
            name=f"delta_hat_{delta_hat:g}",
            samples=[_kerr_sample(eta, m, delta_hat) for m in grid],
        )
        for delta_hat in delta_hat_list
    ]


def kerr_squeezing_phase_offset(cf: CouplingFactors) -> float:
    """θ_m − θ on the μ = 0 branch at Δ = 0, where B = −iΓα².

    Examples:
        >>> kerr_squeezing_phase_offset(KERR_FACTORS) == -math.pi / 4
        True
    """
    if cf.k_i == 0.0:
        raise ValueError("the squeezing phase is undefined without cascaded dispersion")
    return (cmath.phase(complex(0.0, -cf.k_i)) - math.pi) / 2.0


# ----------------------------------------------------------------------
# Undriven harmonic (β_in = 0)
def low_gamma_nl_mismatch_scan(
    m_small: float = 0.1, eta: float = 0.99, dkl_range: Optional[Iterable[float]] = None
) -> PathCurve:
    """Fundamental squeezing versus mismatch at Δ = 0 for a weakly pumped cavity."""
    if dkl_range is None:
        dkl_range = np.linspace(-2.0 * math.pi, 2.0 * math.pi, 401)

    def sample(dkl: float) -> PathSample:
        cf = coupling_factors(dkl)
        delta_hat = -2.0 * cf.k_i * m_small
        fundamental, _ = hat_spectra(m_small, 0.0, delta_hat, cf, eta, 0.0)
        return PathSample(
            m=m_small,
            dkl=dkl,
            delta_hat=delta_hat,
            s_minus=fundamental.s_minus,
            s_plus=fundamental.s_plus,
            **_drive_fields(m_small, 0.0, delta_hat, cf),
            stable=fundamental.physical,
            diverged=fundamental.diverged,
        )

    return PathCurve(name=f"m_{m_small:g}", samples=parallel_map(sample, dkl_range))


def shg_harmonic_mismatch_path(
    m: float = 50.0,
    dkl_grid: Optional[Iterable[float]] = None,
    epsilon: float = INSTABILITY_OFFSET,
) -> PathCurve:
    """Harmonic noise versus mismatch with δ̂ just above the upper instability detuning.

    Where the instability detunings are complex, their common real part −2mK_i
    is used, which keeps Δ ≈ 0.
    """
    if dkl_grid is None:
        dkl_grid = np.linspace(0.0, COARSE_DKL_MAX, 801)

    def sample(dkl: float) -> PathSample:
        cf = coupling_factors(dkl)
        detunings = shg_instability_detunings(m, cf)
        upper = -2.0 * m * cf.k_i if detunings is None else detunings[1]
        return _harmonic_sample(m, 0.0, upper + epsilon, cf, dkl=dkl)

    return PathCurve(name=f"m_{m:g}", samples=parallel_map(sample, dkl_grid))


def _undriven_b_tilde(m: float, cf: CouplingFactors) -> float:
    return m * math.hypot(cf.k_r, cf.k_i) / (1.0 + 2.0 * cf.k_r * m)


def _best_harmonic_noise(m: float, cf: CouplingFactors) -> float:
    """Inner optimum over δ̂ of S^b_−(0) at fixed mismatch.

    |B̃| does not depend on δ̂, so below the instability Δ = 0 is optimal;
    otherwise the stable side of the manifold gives :S_−: → −1, i.e. S_M.
    """
    gamma_nl = 2.0 * cf.k_r * m / (1.0 + 2.0 * cf.k_r * m)
    b_tilde = _undriven_b_tilde(m, cf)
    if b_tilde >= 1.0:
        return 1.0 - gamma_nl
    return 1.0 + gamma_nl * optimized_noise(b_tilde)


def _optimum_sample(m: float, dkl: float, converged: bool) -> PathSample:
    cf = coupling_factors(dkl)
    b_tilde = _undriven_b_tilde(m, cf)
    on_manifold = b_tilde >= 1.0
    detunings = shg_instability_detunings(m, cf)
    if on_manifold:
        delta_hat = -2.0 * cf.k_i * m if detunings is None else detunings[1]
        s_plus = math.inf
    else:
        delta_hat = -2.0 * cf.k_i * m
        gamma_nl = 2.0 * cf.k_r * m / (1.0 + 2.0 * cf.k_r * m)
        s_plus = 1.0 + gamma_nl * reference_spectrum(b_tilde, 0.0, 0.0).s_plus
    return PathSample(
        m=m,
        dkl=dkl,
        delta_hat=delta_hat,
        s_minus=_best_harmonic_noise(m, cf),
        s_plus=s_plus,
        s_bound=s_m_bound(m, cf.k_r),
        **_drive_fields(m, 0.0, delta_hat, cf),
        stable=not on_manifold,
        diverged=on_manifold,
        converged=converged,
    )


def _optimize_mismatch(m: float) -> PathSample:
    """Coarse scan of x on [0, 4π] refined by golden-section search."""
    grid = np.linspace(0.0, COARSE_DKL_MAX, COARSE_DKL_SAMPLES)

    def objective(dkl: float) -> float:
        return _best_harmonic_noise(m, coupling_factors(dkl))

    values = np.array([objective(dkl) for dkl in grid])
    best = int(np.argmin(values))
    if best == 0 or best == len(grid) - 1:
        return _optimum_sample(m, float(grid[best]), converged=True)

    try:
        result = optimize.minimize_scalar(
            objective,
            bracket=(grid[best - 1], grid[best], grid[best + 1]),
            method="golden",
            tol=GOLDEN_TOL,
        )
    except ValueError as err:
        logger.warning(
            "Golden-section refinement failed, keeping the grid minimum",
            extra={"m": m, "error": str(err)},
        )
        return _optimum_sample(m, float(grid[best]), converged=False)

    if not result.success or result.fun > values[best]:
        logger.warning(
            "Golden-section refinement did not improve the grid minimum",
            extra={"m": m, "dkl": float(grid[best])},
        )
        return _optimum_sample(m, float(grid[best]), converged=False)
    return _optimum_sample(m, abs(float(result.x)), converged=True)


def phase_matched_harmonic_noise(m: float) -> float:
    """S^b_−(0) of phase-matched SHG at Δ = 0; tends to 1/9 for large m."""
    return _best_harmonic_noise(m, PHASE_MATCHED)


def shg_harmonic_optimum_vs_m(m_grid: Iterable[float]) -> tuple[PathCurve, PathCurve]:
    """Harmonic noise minimized over mismatch and detuning at each m.

    Returns:
        tuple[PathCurve, PathCurve]: (optimized, phase matched)
    """
    m_grid = list(m_grid)
    optimized = parallel_map(_optimize_mismatch, m_grid)
    phase_matched = [_optimum_sample(m, 0.0, converged=True) for m in m_grid]
    return (
        PathCurve(name="optimized", samples=optimized),
        PathCurve(name="phase_matched", samples=phase_matched),
    )


# ----------------------------------------------------------------------
# Harmonically driven, phase matched, δ̂ = 0
def driven_harmonic_path(
    m: float = 50.0, eta_in_grid: Optional[Iterable[float]] = None
) -> PathCurve:
    """Harmonic noise versus a real harmonic drive η_in (both signs).

    The noise is symmetric about η_in = m, where B̂ vanishes.
    """
    if eta_in_grid is None:
        half_width = 1.25 * (1.0 + 2.0 * m)
        eta_in_grid = np.linspace(m - half_width, m + half_width, 401)

    def sample(eta_in: float) -> PathSample:
        eta_in = float(eta_in)
        return _harmonic_sample(
            m,
            eta_in,
            0.0,
            PHASE_MATCHED,
            eta_in=eta_in,
            power=harmonic_output_power(m, eta_in),
        )

    samples = [sample(eta_in) for eta_in in eta_in_grid]
    return PathCurve(name=f"m_{m:g}", samples=samples)


def driven_distance_scan(
    m_grid: Iterable[float], fractions: Sequence[float] = (0.0, 0.25, 0.5, 0.75)
) -> list[PathCurve]:
    """Harmonic noise and output power versus m at η_in = −f·(1 + m).

    Each curve keeps a fixed fraction f ∈ [0, 1) of the way to the negative
    drive instability.
    """
    m_grid = [float(m) for m in m_grid]
    curves = []
    for fraction in fractions:
        if not 0.0 <= fraction < 1.0:
            raise ValueError(f"fraction must lie in [0, 1), got {fraction}")
        samples = []
        for m in m_grid:
            eta_in = -fraction * (1.0 + m)
            samples.append(
                _harmonic_sample(
                    m,
                    eta_in,
                    0.0,
                    PHASE_MATCHED,
                    eta_in=eta_in,
                    power=harmonic_output_power(m, eta_in),
                )
            )
        curves.append(PathCurve(name=f"f_{fraction:g}", samples=samples))
    return curves


def maximum_squeezing_comparison(m_grid: Iterable[float]) -> list[PathCurve]:
    """Best harmonic squeezing versus m for the driven, optimized and phase-matched cases.

    With a harmonic drive the static floor S_M at K_r = 1 is reachable.
    """
    m_grid = [float(m) for m in m_grid]
    driven = PathCurve(
        name="driven",
        samples=[
            PathSample(
                m=m,
                dkl=0.0,
                s_minus=s_m_bound(m, 1.0),
                s_plus=math.inf,
                s_bound=s_m_bound(m, 1.0),
                stable=False,
                diverged=True,
            )
            for m in m_grid
        ],
    )
    optimized, phase_matched = shg_harmonic_optimum_vs_m(m_grid)
    return [driven, optimized, phase_matched]
