# ---------------------------------------------------------------------------- #
# SPDX-License-Identifier: MIT-0
#
# The one-mode reference system. Every physical output spectrum is
# 1 + γ̃_n·:S_ref: for the channel n it leaves through.
# ---------------------------------------------------------------------------- #
from __future__ import annotations

import math

from aws_lambda_powertools import Logger

from .constants import DENOMINATOR_TOL, SERVICE_NAME
from .types import ChannelSet, ReferenceSpectrum

logger = Logger(service=SERVICE_NAME, child=True)


def _radical_and_denominator(b: float, delta_big: float, omega: float) -> tuple[float, float]:
    """R = √((1+ω̃²+b²−Δ²)² + 4Δ²) and D = (1−ω̃²−b²+Δ²)² + 4ω̃², with R² − D = 4b²."""
    radical = math.hypot(1.0 + omega**2 + b**2 - delta_big**2, 2.0 * delta_big)
    denominator = (1.0 - omega**2 - b**2 + delta_big**2) ** 2 + 4.0 * omega**2
    return radical, denominator


def reference_spectrum(
    b_tilde_mod: float, delta_big: float, omega_tilde: float
) -> ReferenceSpectrum:
    """Normally ordered spectra :S_−:, :S_+: of the reference system.

    :S_∓: = 4b(2b ∓ R)/D, evaluated as :S_−: = −4b/(2b + R) and
    :S_+: = 4b(2b + R)/D so that neither loses digits near the instability.

    Args:
        b_tilde_mod (float): |B̃|
        delta_big (float): Δ, detuning in units of γ_t
        omega_tilde (float): ω̃ = ω/γ_t

    Returns:
        ReferenceSpectrum: `s_plus` is +inf and `diverged` set where D vanishes
    """
    b = abs(b_tilde_mod)
    if b == 0.0:
        return ReferenceSpectrum(s_minus=0.0, s_plus=0.0)

    radical, denominator = _radical_and_denominator(b, delta_big, omega_tilde)
    s_minus = -4.0 * b / (2.0 * b + radical)
    diverged = denominator <= DENOMINATOR_TOL * radical**2
    if denominator == 0.0:
        s_plus = math.inf
    else:
        s_plus = 4.0 * b * (2.0 * b + radical) / denominator
    return ReferenceSpectrum(s_minus=s_minus, s_plus=s_plus, diverged=diverged)


def optimized_noise(b_tilde_mod: float) -> float:
    """:S_opt: = −4|B̃|/(1 + |B̃|)², the reference minimum at ω̃ = 0 and Δ = 0.

    Examples:
        >>> optimized_noise(1.0)
        -1.0
    """
    if b_tilde_mod < 0.0:
        raise ValueError(f"|B̃| must be non-negative, got {b_tilde_mod}")
    return -4.0 * b_tilde_mod / (1.0 + b_tilde_mod) ** 2


def instability_limit_spectrum(b_tilde_mod: float, omega_tilde: float) -> float:
    """:S_I:(ω̃) on the instability manifold 1 + Δ² = |B̃|².

    4b(2b − √(4b² + u))/u with u = ω̃²(ω̃² + 4), rewritten as −4b/(2b + √(4b² + u)).
    The ω̃ = 0 limit is −1.
    """
    if omega_tilde == 0.0:
        return -1.0
    b = abs(b_tilde_mod)
    u = omega_tilde**2 * (omega_tilde**2 + 4.0)
    return -4.0 * b / (2.0 * b + math.sqrt(4.0 * b**2 + u))


def full_spectra(
    b_tilde_mod: float, delta_big: float, omega_tilde: float
) -> tuple[float, float]:
    """S_∓ = 1 + :S_∓: of the lossless reference output.

    S_− = D/(2b + R)² and S_+ = (2b + R)²/D.
    """
    b = abs(b_tilde_mod)
    radical, denominator = _radical_and_denominator(b, delta_big, omega_tilde)
    square = (2.0 * b + radical) ** 2
    s_plus = math.inf if denominator == 0.0 else square / denominator
    return denominator / square, s_plus


def mus_product(b_tilde_mod: float, delta_big: float, omega_tilde: float) -> float:
    """S_−·S_+ of the reference system; one off the divergences, NaN on them."""
    s_minus, s_plus = full_spectra(b_tilde_mod, delta_big, omega_tilde)
    if math.isinf(s_plus):
        logger.debug(
            "MUS product undefined at a divergence",
            extra={"b_tilde": b_tilde_mod, "delta_big": delta_big, "omega": omega_tilde},
        )
        return math.nan
    return s_minus * s_plus


def channel_spectrum(
    channels: ChannelSet, which: str, s_ref: ReferenceSpectrum
) -> tuple[float, float]:
    """Full spectra 1 + γ̃_n·:S_ref: of the output leaving through channel `which`.

    Raises:
        UnknownChannel: `which` is not in the set
    """
    weight = channels.weight(which)
    if weight == 0.0:
        return 1.0, 1.0
    return 1.0 + weight * s_ref.s_minus, 1.0 + weight * s_ref.s_plus
