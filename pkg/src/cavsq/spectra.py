# ---------------------------------------------------------------------------- #
# SPDX-License-Identifier: MIT-0
#
# Zero-point normalized noise spectra of the fundamental and harmonic outputs.
# ---------------------------------------------------------------------------- #
from __future__ import annotations

import cmath
import math
from typing import Optional

import numpy as np
from aws_lambda_powertools import Logger

from .constants import (
    DENOMINATOR_TOL,
    NOISE_FLOOR_DUST,
    OMEGA_MAX,
    OMEGA_MIN,
    OMEGA_SAMPLES,
    SERVICE_NAME,
)
from .core import effective_gain, normalized_params
from .reference_model import channel_spectrum, reference_spectrum
from .stability import eigenvalues, hat_eigenvalues
from .types import (
    CavityConfig,
    ChannelSet,
    CouplingFactors,
    EChannel,
    EMode,
    ENormalization,
    SpectrumResult,
    SqueezingPhase,
    SteadyState,
)

logger = Logger(service=SERVICE_NAME, child=True)


def _clamp_dust(s_minus: float) -> float:
    if -NOISE_FLOOR_DUST < s_minus < 0.0:
        return 0.0
    return s_minus


def _pair(
    gamma_t: float, detuning: float, b_mod: float, omega: float, weight: float
) -> tuple[float, float, bool]:
    """(S_−, S_+, diverged) for S = 1 + weight·|B|·N_∓/D.

    N_∓ = 2|B|γ_t ∓ R with R = √([γ_t² − d² + |B|² + ω²]² + 4γ_t²d²) and
    D = [γ_t² + d² − |B|² − ω²]² + 4γ_t²ω², d the generalized detuning.
    Since R² − D = 4|B|²γ_t², N_−/D = −1/(2|B|γ_t + R).
    """
    if b_mod == 0.0:
        return 1.0, 1.0, False
    radical = math.hypot(
        gamma_t**2 - detuning**2 + b_mod**2 + omega**2, 2.0 * gamma_t * detuning
    )
    denominator = (gamma_t**2 + detuning**2 - b_mod**2 - omega**2) ** 2 + 4.0 * (
        gamma_t * omega
    ) ** 2
    stretch = 2.0 * b_mod * gamma_t + radical

    s_minus = _clamp_dust(1.0 - weight * b_mod / stretch)
    diverged = denominator <= DENOMINATOR_TOL * radical**2
    if weight == 0.0:
        s_plus = 1.0
    elif denominator == 0.0:
        s_plus = math.inf
    else:
        s_plus = 1.0 + weight * b_mod * stretch / denominator
    return s_minus, s_plus, diverged


def _correlation_phase(correlation: complex) -> Optional[float]:
    # θ_m = (arg ⟨:δa δa:⟩ − π)/2
    if correlation == 0.0:
        return None
    return (cmath.phase(correlation) - math.pi) / 2.0


def _spectral_factor(gamma_t: float, detuning: float, b_mod: float, omega: float) -> complex:
    return complex(omega**2 + b_mod**2 + gamma_t**2 - detuning**2, 2.0 * gamma_t * detuning)


def squeezing_phase(
    cfg: CavityConfig, cf: CouplingFactors, ss: SteadyState, omega: float
) -> SqueezingPhase:
    """Optimal quadrature phases of both outputs at frequency ω.

    The fundamental correlation is ∝ B·[ω² + |B|² + γ_t² − d² + 2iγ_t·d] and the
    harmonic one carries an extra μα². A vanishing correlation leaves the phase
    undefined (None).
    """
    mu, gamma_cap = cf.nonlinear_rates(cfg.nu)
    b_raw = effective_gain(cfg, cf, ss).b_raw
    factor = _spectral_factor(
        cfg.gamma + 2.0 * mu * ss.n,
        cfg.delta + 2.0 * gamma_cap * ss.n,
        abs(b_raw),
        omega,
    )
    return SqueezingPhase(
        fundamental=_correlation_phase(b_raw * factor),
        harmonic=_correlation_phase(mu * ss.alpha**2 * b_raw * factor),
    )


def _hat_squeezing_phase(
    m: float, b_hat: complex, gamma_t: float, detuning: float, omega: float, k_r: float
) -> SqueezingPhase:
    # phases relative to θ (fundamental) and 2θ (harmonic)
    factor = _spectral_factor(gamma_t, detuning, abs(b_hat), omega)
    return SqueezingPhase(
        fundamental=_correlation_phase(b_hat * factor),
        harmonic=_correlation_phase(k_r * m * b_hat * factor),
    )


def raw_spectra(
    cfg: CavityConfig, cf: CouplingFactors, ss: SteadyState, omega: float
) -> tuple[SpectrumResult, SpectrumResult]:
    """Fundamental and harmonic spectra in the configuration's rate units.

    S^a = 1 + 4γ_c|B|·N/D and S^b = 1 + 8μn|B|·N/D; both outputs share N/D.

    Args:
        cfg (CavityConfig): the cavity
        cf (CouplingFactors): coupling factors for cfg.dkl
        ss (SteadyState): the fixed point
        omega (float): analysis frequency

    Returns:
        tuple[SpectrumResult, SpectrumResult]: (fundamental, harmonic)
    """
    mu, gamma_cap = cf.nonlinear_rates(cfg.nu)
    gamma_t = cfg.gamma + 2.0 * mu * ss.n
    detuning = cfg.delta + 2.0 * gamma_cap * ss.n
    b_mod = abs(effective_gain(cfg, cf, ss).b_raw)

    report = eigenvalues(cfg, cf, ss)
    if not report.stable:
        logger.warning(
            "Spectra of an unstable fixed point are not physical",
            extra={"n": ss.n, "max_real": report.max_real},
        )
    phase = squeezing_phase(cfg, cf, ss, omega)

    results = []
    for mode, weight, theta_m in (
        (EMode.FUNDAMENTAL, 4.0 * cfg.gamma_c, phase.fundamental),
        (EMode.HARMONIC, 8.0 * mu * ss.n, phase.harmonic),
    ):
        s_minus, s_plus, diverged = _pair(gamma_t, detuning, b_mod, omega, weight)
        results.append(
            SpectrumResult(
                normalization=ENormalization.RAW,
                mode=mode,
                omega=omega,
                s_minus=s_minus,
                s_plus=s_plus,
                theta_m=theta_m,
                diverged=diverged,
                physical=report.stable,
            )
        )
    return results[0], results[1]


def hat_spectra(
    m: float,
    eta_in: complex,
    delta_hat: float,
    cf: CouplingFactors,
    gamma_hat_c: float,
    omega_hat: float,
) -> tuple[SpectrumResult, SpectrumResult]:
    """Fundamental and harmonic spectra with rates in units of γ.

    S^a = 1 + 4γ̂_c|B̂|·N̂/D̂ and S^b = 1 + 8K_r·m·|B̂|·N̂/D̂ with
    B̂ = √K_r·η_in − (K_r + iK_i)·m. Quadrature phases are relative to θ
    (fundamental) and 2θ (harmonic).
    """
    if m < 0.0:
        raise ValueError(f"normalized photon number must be non-negative, got {m}")
    b_hat = math.sqrt(cf.k_r) * eta_in - complex(cf.k_r, cf.k_i) * m
    gamma_t = 1.0 + 2.0 * cf.k_r * m
    detuning = delta_hat + 2.0 * cf.k_i * m
    b_mod = abs(b_hat)

    report = hat_eigenvalues(m, eta_in, delta_hat, cf)
    phase = _hat_squeezing_phase(m, b_hat, gamma_t, detuning, omega_hat, cf.k_r)

    results = []
    for mode, weight, theta_m in (
        (EMode.FUNDAMENTAL, 4.0 * gamma_hat_c, phase.fundamental),
        (EMode.HARMONIC, 8.0 * cf.k_r * m, phase.harmonic),
    ):
        s_minus, s_plus, diverged = _pair(gamma_t, detuning, b_mod, omega_hat, weight)
        results.append(
            SpectrumResult(
                normalization=ENormalization.HAT,
                mode=mode,
                omega=omega_hat,
                s_minus=s_minus,
                s_plus=s_plus,
                theta_m=theta_m,
                diverged=diverged,
                physical=report.stable,
            )
        )
    return results[0], results[1]


def tilde_spectra(
    cfg: CavityConfig, cf: CouplingFactors, ss: SteadyState, omega: float
) -> tuple[SpectrumResult, SpectrumResult]:
    """Spectra through the reference system and the channel decomposition.

    `omega` is in rate units; the results carry ω̃ = ω/γ_t.
    """
    params = normalized_params(cfg, cf, ss)
    gain = effective_gain(cfg, cf, ss)
    omega_tilde = omega / params.gamma_t
    s_ref = reference_spectrum(abs(gain.b_tilde), gain.delta_big, omega_tilde)
    channels = ChannelSet.from_params(params)
    stable = eigenvalues(cfg, cf, ss).stable
    phase = squeezing_phase(cfg, cf, ss, omega)

    results = []
    for mode, channel, theta_m in (
        (EMode.FUNDAMENTAL, EChannel.COUPLING, phase.fundamental),
        (EMode.HARMONIC, EChannel.NONLINEAR, phase.harmonic),
    ):
        s_minus, s_plus = channel_spectrum(channels, channel.value, s_ref)
        results.append(
            SpectrumResult(
                normalization=ENormalization.TILDE,
                mode=mode,
                omega=omega_tilde,
                s_minus=_clamp_dust(s_minus),
                s_plus=s_plus,
                theta_m=theta_m,
                diverged=s_ref.diverged,
                physical=stable,
            )
        )
    return results[0], results[1]


def spectrum_grid(
    omega_max: float = OMEGA_MAX,
    samples: int = OMEGA_SAMPLES,
    omega_min: float = OMEGA_MIN,
    scale: float = 1.0,
) -> np.ndarray:
    """ω = 0 followed by a log-spaced grid on [omega_min, omega_max], times `scale`."""
    if not 0.0 < omega_min < omega_max:
        raise ValueError(f"need 0 < omega_min < omega_max, got {omega_min}, {omega_max}")
    grid = np.geomspace(omega_min, omega_max, samples)
    return scale * np.concatenate(([0.0], grid))


def s_m_bound(m: float, k_r: float) -> float:
    """Static harmonic noise floor S_M = 1/(1 + 2m·K_r).

    Examples:
        >>> s_m_bound(5.0, 1.0) == 1.0 / 11.0
        True
    """
    if m < 0.0 or k_r < 0.0:
        raise ValueError(f"m and k_r must be non-negative, got {m}, {k_r}")
    return 1.0 / (1.0 + 2.0 * m * k_r)


def loss_degraded(s_in_normal_ordered: float, transmissivity: float) -> float:
    """Noise after a beam splitter of transmissivity T: 1 + T·:S_in:."""
    if not 0.0 <= transmissivity <= 1.0:
        raise ValueError(f"transmissivity must lie in [0, 1], got {transmissivity}")
    return 1.0 + transmissivity * s_in_normal_ordered


def harmonic_output_amplitude(m: float, eta_in: complex, k_r: float = 1.0) -> complex:
    """Harmonic output 2√K_r·m − η_in in the frame rotating with 2θ (hat units)."""
    return 2.0 * math.sqrt(k_r) * m - eta_in


def harmonic_output_power(m: float, eta_in: complex) -> float:
    """Relative harmonic output power |η_in − 2m|²; η_in = 0 gives the SHG level (2m)²."""
    return abs(harmonic_output_amplitude(m, eta_in)) ** 2


def relative_squeezing_phase(theta_m: float, output_phase: float) -> float:
    """Angle in (0, π] between the squeezed quadrature and the mean output field.

    π means amplitude squeezing, π/2 phase squeezing.
    """
    relative = (theta_m - output_phase) % math.pi
    if relative < 1e-12:
        return math.pi
    return relative
