# ---------------------------------------------------------------------------- #
# SPDX-License-Identifier: MIT-0
#
# Classical fixed points: the photon number quintic, phase recovery and the
# inverse map from a prescribed photon number to the fundamental input power.
# ---------------------------------------------------------------------------- #
from __future__ import annotations

import math

import numpy as np
from aws_lambda_powertools import Logger
from numpy.polynomial import polynomial as P

from .constants import (
    DENOMINATOR_TOL,
    NEWTON_MAX_ITERATIONS,
    REAL_ROOT_IMAG_TOL,
    ROOT_CLAMP_TOL,
    ROOT_MERGE_TOL,
    SERVICE_NAME,
    UNIT_CIRCLE_TOL,
)
from .exceptions import (
    InfeasibleDrive,
    NotAFixedPoint,
    RootFindingError,
    SingularStateEquation,
)
from .types import CavityConfig, CouplingFactors, SteadyState, wrap_phase

logger = Logger(service=SERVICE_NAME, child=True)

QUINTIC_DEGREE = 5


def _drive_terms(cfg: CavityConfig, cf: CouplingFactors) -> tuple[float, float, float, float]:
    """(μ, Γ, 4μ|β_in|², 4√μ|β_in|) for a configuration."""
    mu, gamma_cap = cf.nonlinear_rates(cfg.nu)
    return (
        mu,
        gamma_cap,
        4.0 * mu * cfg.beta_in_mod**2,
        4.0 * math.sqrt(mu) * cfg.beta_in_mod,
    )


def _state_terms(cfg: CavityConfig, cf: CouplingFactors, n: float) -> tuple[float, float]:
    """The two sides of the photon number equation at n.

    Returns n·[(γ+μn)² + (δ+Γn)² − 4μ|β_in|²]² and
    2γ_c|α_in|²·{(γ+μn)² + (δ+Γn)² + 4μ|β_in|² + 4√μ|β_in|[(γ+μn)cos ψ + (δ+Γn)sin ψ]}
    with ψ = 2φ − ϕ.
    """
    mu, gamma_cap, q, r = _drive_terms(cfg, cf)
    psi = cfg.relative_input_phase()
    loss = cfg.gamma + mu * n
    detuning = cfg.delta + gamma_cap * n
    common = loss**2 + detuning**2
    lhs = n * (common - q) ** 2
    brace = common + q + r * (loss * math.cos(psi) + detuning * math.sin(psi))
    return lhs, 2.0 * cfg.gamma_c * cfg.alpha_in_mod**2 * brace


def state_residual(cfg: CavityConfig, cf: CouplingFactors, n: float) -> float:
    """Relative residual of the unexpanded photon number equation at n."""
    lhs, rhs = _state_terms(cfg, cf, n)
    scale = abs(lhs) + abs(rhs)
    if scale == 0.0:
        return 0.0
    return abs(lhs - rhs) / scale


def quintic_coefficients(cfg: CavityConfig, cf: CouplingFactors) -> np.ndarray:
    """Ascending coefficients c_0..c_5 of the photon number polynomial p(n).

    Args:
        cfg (CavityConfig): the cavity
        cf (CouplingFactors): coupling factors for cfg.dkl

    Returns:
        np.ndarray: six real coefficients, p(n) = Σ c_k n^k
    """
    mu, gamma_cap, q, r = _drive_terms(cfg, cf)
    psi = cfg.relative_input_phase()
    gamma, delta = cfg.gamma, cfg.delta

    common = np.array(
        [gamma**2 + delta**2, 2.0 * (gamma * mu + delta * gamma_cap), mu**2 + gamma_cap**2]
    )
    reduced = P.polysub(common, [q])
    lhs = P.polymul([0.0, 1.0], P.polypow(reduced, 2))

    cross = np.array(
        [
            r * (gamma * math.cos(psi) + delta * math.sin(psi)),
            r * (mu * math.cos(psi) + gamma_cap * math.sin(psi)),
        ]
    )
    brace = P.polyadd(P.polyadd(common, [q]), cross)
    rhs = 2.0 * cfg.gamma_c * cfg.alpha_in_mod**2 * brace

    coefficients = np.zeros(QUINTIC_DEGREE + 1)
    difference = P.polysub(lhs, rhs)
    coefficients[: len(difference)] = difference
    return coefficients


def _polish(cfg: CavityConfig, cf: CouplingFactors, n: float, derivative: np.ndarray) -> float:
    """Newton steps on the unexpanded equation, keeping only improving steps."""
    lhs, rhs = _state_terms(cfg, cf, n)
    best, best_value = n, abs(lhs - rhs)
    for _ in range(NEWTON_MAX_ITERATIONS):
        slope = P.polyval(best, derivative)
        if slope == 0.0 or best_value == 0.0:
            break
        candidate = max(best - (lhs - rhs) / slope, 0.0)
        lhs, rhs = _state_terms(cfg, cf, candidate)
        value = abs(lhs - rhs)
        if not value < best_value:
            break
        best, best_value = candidate, value
    return best


def solve_n(cfg: CavityConfig, cf: CouplingFactors) -> list[float]:
    """All admissible photon numbers n ≥ 0 of the fixed point problem.

    Roots come from the companion-matrix eigenvalues of the quintic, then are
    polished with Newton on the unexpanded equation.

    Returns:
        list[float]: roots sorted ascending, near-duplicates merged

    Raises:
        RootFindingError: non-finite eigenvalues or a degenerate polynomial
    """
    coefficients = quintic_coefficients(cfg, cf)
    trimmed = P.polytrim(coefficients, tol=0.0)
    if len(trimmed) < 2:
        raise RootFindingError(coefficients=list(coefficients), reason="degenerate polynomial")

    try:
        eigen_roots = P.polyroots(trimmed)
    except np.linalg.LinAlgError as err:
        raise RootFindingError(coefficients=list(coefficients), reason=str(err))
    if not np.all(np.isfinite(eigen_roots)):
        raise RootFindingError(coefficients=list(coefficients), reason="non-finite eigenvalues")

    derivative = P.polyder(trimmed)
    candidates = []
    for root in np.atleast_1d(eigen_roots):
        re, im = float(np.real(root)), float(np.imag(root))
        if abs(im) >= REAL_ROOT_IMAG_TOL * (1.0 + abs(re)):
            continue
        if re < -ROOT_CLAMP_TOL * (1.0 + abs(re)):
            continue
        candidates.append(_polish(cfg, cf, max(re, 0.0), derivative))

    roots: list[float] = []
    for n in sorted(candidates):
        if n < ROOT_CLAMP_TOL:
            n = 0.0
        if roots and abs(n - roots[-1]) < ROOT_MERGE_TOL * (1.0 + roots[-1]):
            continue
        roots.append(n)

    for n in roots:
        residual = state_residual(cfg, cf, n)
        if residual > 1e-8:
            logger.warning(
                "Photon number root not fully converged",
                extra={"n": n, "residual": residual},
            )
    logger.debug("Solved photon number equation", extra={"roots": roots})
    return roots


def input_power_for_n(
    cfg: CavityConfig,
    cf: CouplingFactors,
    n: float,
    theta_phi_rel: float | None = None,
) -> float:
    """|α_in|² that makes n a fixed point, for a relative input phase ψ = 2φ − ϕ.

    The photon number equation is linear in |α_in|², so
    2γ_c|α_in|² = n[(γ+μn)² + (δ+Γn)² − 4μ|β_in|²]² / |γ+μn + i(δ+Γn) + 2√μ|β_in|e^{iψ}|².

    Args:
        cfg (CavityConfig): the cavity; its α_in is ignored
        cf (CouplingFactors): coupling factors for cfg.dkl
        n (float): prescribed photon number
        theta_phi_rel (Optional[float]): ψ; defaults to the configuration's 2φ − ϕ

    Raises:
        InfeasibleDrive: the denominator is not positive
    """
    if n == 0.0:
        return 0.0
    if cfg.gamma_c <= 0.0:
        raise InfeasibleDrive(n=n, denominator=0.0)

    mu, gamma_cap, q, r = _drive_terms(cfg, cf)
    psi = cfg.relative_input_phase() if theta_phi_rel is None else theta_phi_rel
    loss = cfg.gamma + mu * n
    detuning = cfg.delta + gamma_cap * n
    common = loss**2 + detuning**2

    numerator = n * (common - q) ** 2
    denominator = common + q + r * (loss * math.cos(psi) + detuning * math.sin(psi))
    if denominator <= DENOMINATOR_TOL * (common + q):
        raise InfeasibleDrive(n=n, denominator=denominator)
    return numerator / denominator / (2.0 * cfg.gamma_c)


def recover_theta(cfg: CavityConfig, cf: CouplingFactors, n: float) -> float:
    """Intracavity phase θ of the fixed point with photon number n.

    Evaluates the state equation
    α = √(2γ_c){[γ+μn − i(δ+Γn)]α_in + 2√μ β_in α_in*} / [(γ+μn)² + (δ+Γn)² − 4μ|β_in|²],
    whose real and imaginary parts give cos(θ − ϕ/2) and sin(θ − ϕ/2).

    Raises:
        SingularStateEquation: the common denominator vanishes
        NotAFixedPoint: the recovered (cos, sin) pair is off the unit circle
    """
    if n <= 0.0:
        raise ValueError("the phase of an empty cavity is undefined")

    mu, gamma_cap, q, _ = _drive_terms(cfg, cf)
    loss = cfg.gamma + mu * n
    detuning = cfg.delta + gamma_cap * n
    common = loss**2 + detuning**2
    denominator = common - q
    if abs(denominator) <= DENOMINATOR_TOL * (common + q):
        raise SingularStateEquation(where="phase recovery", value=denominator)

    alpha_in = cfg.alpha_in
    alpha = math.sqrt(2.0 * cfg.gamma_c) * (
        complex(loss, -detuning) * alpha_in
        + 2.0 * math.sqrt(mu) * cfg.beta_in * alpha_in.conjugate()
    ) / denominator
    unit = alpha / math.sqrt(n)
    deviation = abs(abs(unit) ** 2 - 1.0)
    if deviation > UNIT_CIRCLE_TOL:
        raise NotAFixedPoint(n=n, deviation=deviation)
    return wrap_phase(math.atan2(unit.imag, unit.real))


def fixed_points(cfg: CavityConfig, cf: CouplingFactors) -> list[SteadyState]:
    """Every fixed point with its phase, skipping roots on the singular set."""
    states = []
    for n in solve_n(cfg, cf):
        if n == 0.0:
            states.append(SteadyState(n=0.0, theta=0.0, residual=state_residual(cfg, cf, n)))
            continue
        try:
            theta = recover_theta(cfg, cf, n)
        except SingularStateEquation as err:
            logger.warning(str(err), extra={"n": n})
            continue
        states.append(SteadyState(n=n, theta=theta, residual=state_residual(cfg, cf, n)))
    return states


def drive_for_state(cfg: CavityConfig, cf: CouplingFactors, alpha: complex) -> complex:
    """Fundamental input α_in making α a fixed point with the configured β_in.

    √(2γ_c)·α_in = [γ + iδ + (μ + iΓ)|α|²]α − 2√μ·α*·β_in
    """
    if cfg.gamma_c <= 0.0:
        raise InfeasibleDrive(n=abs(alpha) ** 2, denominator=0.0)
    mu, gamma_cap = cf.nonlinear_rates(cfg.nu)
    n = abs(alpha) ** 2
    field = complex(cfg.gamma + mu * n, cfg.delta + gamma_cap * n) * alpha
    pump = 2.0 * math.sqrt(mu) * alpha.conjugate() * cfg.beta_in
    return (field - pump) / math.sqrt(2.0 * cfg.gamma_c)


def normalized_drive(
    m: float, eta_in: complex, delta_hat: float, cf: CouplingFactors
) -> complex:
    """Fundamental drive in hat units, √(2γ_c ν/γ³)·α_in·e^{−iθ}.

    Always defined: prescribing the state and η_in (relative to θ) leaves the
    drive phase free, so every m is reachable.
    """
    return math.sqrt(m) * (
        complex(1.0 + cf.k_r * m, delta_hat + cf.k_i * m) - math.sqrt(cf.k_r) * eta_in
    )
