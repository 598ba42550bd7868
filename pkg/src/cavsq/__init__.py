# ---------------------------------------------------------------------------- #
# SPDX-License-Identifier: MIT-0
# ---------------------------------------------------------------------------- #
"""Linearized quantum noise of a singly resonant second-order cavity."""
from .core import (
    PERFECT_SQUEEZING_DB,
    effective_gain,
    noise_reduction_percent,
    normalized_params,
    to_db,
    to_db_report,
)
from .coupling import coupling_factors, for_config, ki2_minus_3kr2, shg_like_window
from .exceptions import CavsqException
from .reference_model import (
    channel_spectrum,
    instability_limit_spectrum,
    mus_product,
    optimized_noise,
    reference_spectrum,
)
from .spectra import (
    hat_spectra,
    loss_degraded,
    raw_spectra,
    s_m_bound,
    squeezing_phase,
    tilde_spectra,
)
from .stability import eigenvalues, hat_eigenvalues
from .steady_state import fixed_points, input_power_for_n, recover_theta, solve_n
from .types import (
    CavityConfig,
    ChannelSet,
    CouplingFactors,
    NormalizedParams,
    PathCurve,
    PathSample,
    SpectrumResult,
    StabilityReport,
    SteadyState,
)

__all__ = [
    "PERFECT_SQUEEZING_DB",
    "CavityConfig",
    "CavsqException",
    "ChannelSet",
    "CouplingFactors",
    "NormalizedParams",
    "PathCurve",
    "PathSample",
    "SpectrumResult",
    "StabilityReport",
    "SteadyState",
    "channel_spectrum",
    "coupling_factors",
    "effective_gain",
    "eigenvalues",
    "fixed_points",
    "for_config",
    "hat_eigenvalues",
    "hat_spectra",
    "input_power_for_n",
    "instability_limit_spectrum",
    "ki2_minus_3kr2",
    "loss_degraded",
    "mus_product",
    "noise_reduction_percent",
    "normalized_params",
    "optimized_noise",
    "raw_spectra",
    "recover_theta",
    "reference_spectrum",
    "s_m_bound",
    "shg_like_window",
    "solve_n",
    "squeezing_phase",
    "tilde_spectra",
    "to_db",
    "to_db_report",
]
