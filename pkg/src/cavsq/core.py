# ---------------------------------------------------------------------------- #
# SPDX-License-Identifier: MIT-0
#
# Unit conventions shared by every module: dB conversion and the tilde/hat
# normalizations of a fixed point.
# ---------------------------------------------------------------------------- #
from __future__ import annotations

import cmath
import math

from .exceptions import NonPositiveNoisePower
from .types import (
    CavityConfig,
    CouplingFactors,
    EffectiveGain,
    NormalizedParams,
    SteadyState,
)

# Reported in place of 10·log10(0) for perfect squeezing
PERFECT_SQUEEZING_DB = float("-inf")


def to_db(s: float) -> float:
    """Convert a linear noise power (vacuum = 1) to dB.

    Raises:
        NonPositiveNoisePower: if s ≤ 0

    Examples:
        >>> round(to_db(0.5), 4)
        -3.0103
    """
    if not s > 0.0:
        raise NonPositiveNoisePower(value=s)
    return 10.0 * math.log10(s)


def to_db_report(s: float) -> float:
    """Like `to_db` but maps perfect squeezing (s = 0) to `PERFECT_SQUEEZING_DB`."""
    if s == 0.0:
        return PERFECT_SQUEEZING_DB
    if math.isinf(s) and s > 0.0:
        return math.inf
    return to_db(s)


def noise_reduction_percent(s: float) -> float:
    return 100.0 * (1.0 - s)


def normalized_params(
    cfg: CavityConfig, cf: CouplingFactors, ss: SteadyState
) -> NormalizedParams:
    """Tilde and hat quantities of a fixed point.

    The three tilde rates are built from a single total so that they sum to
    one up to rounding.
    """
    mu, _ = cf.nonlinear_rates(cfg.nu)
    gamma = cfg.gamma
    gamma_nl = 2.0 * mu * ss.n
    gamma_t = gamma + gamma_nl
    eta_in = (
        2.0 * math.sqrt(cfg.nu) / gamma * cfg.beta_in * cmath.exp(-2j * ss.theta)
    )
    return NormalizedParams(
        m=cfg.nu * ss.n / gamma,
        eta_in=eta_in,
        eta=cfg.gamma_c / gamma,
        gamma_nl=gamma_nl,
        gamma_t=gamma_t,
        gamma_tilde_c=cfg.gamma_c / gamma_t,
        gamma_tilde_nl=gamma_nl / gamma_t,
        gamma_tilde_s=cfg.gamma_s / gamma_t,
    )


def effective_gain(
    cfg: CavityConfig, cf: CouplingFactors, ss: SteadyState
) -> EffectiveGain:
    """The parametric coefficient B in raw, tilde and hat form plus Δ."""
    mu, gamma_cap = cf.nonlinear_rates(cfg.nu)
    gamma_t = cfg.gamma + 2.0 * mu * ss.n
    b_raw = 2.0 * math.sqrt(mu) * cfg.beta_in - complex(mu, gamma_cap) * ss.alpha**2

    params = normalized_params(cfg, cf, ss)
    b_hat = math.sqrt(cf.k_r) * params.eta_in - complex(cf.k_r, cf.k_i) * params.m
    return EffectiveGain(
        b_raw=b_raw,
        b_tilde=b_raw / gamma_t,
        b_hat=b_hat,
        delta_big=(cfg.delta + 2.0 * gamma_cap * ss.n) / gamma_t,
    )
