# ---------------------------------------------------------------------------- #
# SPDX-License-Identifier: MIT-0
# ---------------------------------------------------------------------------- #
from __future__ import annotations

import cmath
import math
from enum import Enum
from typing import Any, Optional

import pandas as pd
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .constants import FLUCTUATION_DISSIPATION_TOL
from .exceptions import UnknownChannel


def wrap_phase(angle: float) -> float:
    """Reduce an angle in radians to (−π, π]; −π itself maps to π."""
    return -((-angle + math.pi) % (2.0 * math.pi) - math.pi)


class ENormalization(Enum):
    """Unit system a spectrum was evaluated in.

    Attributes:
        RAW: rates in the units of the configuration (s⁻¹ or γ = 1)
        HAT: rates divided by γ, photon number as m = νn/γ
        TILDE: rates divided by the total decay γ_t = γ + 2μn
    """

    RAW = "raw"
    HAT = "hat"
    TILDE = "tilde"


class EMode(Enum):
    FUNDAMENTAL = "fundamental"
    HARMONIC = "harmonic"


class EChannel(Enum):
    """Input channels of the one-mode reduction shipped with the library."""

    COUPLING = "coupling"
    NONLINEAR = "nonlinear"
    SCATTERING = "scattering"


# ----------------------------------------------------------------------
class CavityConfig(BaseModel):
    """Rates and drives of the singly resonant cavity.

    Rates may be physical (s⁻¹) or normalized with γ = 1; nothing below
    assumes either.

    Attributes:
        gamma_c (float): output-coupling decay rate
        gamma_s (float): scattering/absorption decay rate
        delta (float): detuning of the fundamental mode
        nu (float): second-order nonlinear strength (rate per photon)
        dkl (float): dimensionless phase mismatch x = Δk·L_m
        alpha_in_mod (float): fundamental drive modulus
        alpha_in_phase (float): fundamental drive phase φ, reduced to (−π, π]
        beta_in_mod (float): harmonic drive modulus
        beta_in_phase (float): harmonic drive phase ϕ, reduced to (−π, π]

    Examples:
        >>> cfg = CavityConfig(gamma_c=1.0, gamma_s=0.0, nu=1.0, alpha_in_mod=2.0)
        >>> cfg.gamma
        1.0
    """

    model_config = ConfigDict(frozen=True, extra="forbid", allow_inf_nan=False)

    gamma_c: float = Field(ge=0.0)
    gamma_s: float = Field(default=0.0, ge=0.0)
    delta: float = 0.0
    nu: float = Field(default=0.0, ge=0.0)
    dkl: float = 0.0
    alpha_in_mod: float = Field(default=0.0, ge=0.0)
    alpha_in_phase: float = 0.0
    beta_in_mod: float = Field(default=0.0, ge=0.0)
    beta_in_phase: float = 0.0

    @model_validator(mode="before")
    @classmethod
    def drop_derived_gamma(cls, data: Any) -> Any:
        """Accept an explicit `gamma` only when it equals gamma_c + gamma_s."""
        if isinstance(data, dict) and "gamma" in data:
            data = dict(data)
            gamma = float(data.pop("gamma"))
            total = float(data.get("gamma_c", 0.0)) + float(data.get("gamma_s", 0.0))
            if not math.isclose(gamma, total, rel_tol=1e-12, abs_tol=1e-300):
                raise ValueError(
                    f"gamma={gamma} differs from gamma_c + gamma_s = {total}"
                )
        return data

    @field_validator("alpha_in_phase", "beta_in_phase")
    @classmethod
    def reduce_phase(cls, value: float) -> float:
        return wrap_phase(value)

    @model_validator(mode="after")
    def validate_total_decay(self):
        if self.gamma <= 0.0:
            raise ValueError("gamma = gamma_c + gamma_s must be positive")
        return self

    @property
    def gamma(self) -> float:
        return self.gamma_c + self.gamma_s

    @property
    def alpha_in(self) -> complex:
        return cmath.rect(self.alpha_in_mod, self.alpha_in_phase)

    @property
    def beta_in(self) -> complex:
        return cmath.rect(self.beta_in_mod, self.beta_in_phase)

    def harmonic_phase(self) -> float:
        """Harmonic input phase ϕ; undefined without harmonic drive, then taken as 2φ."""
        if self.beta_in_mod == 0.0:
            return wrap_phase(2.0 * self.alpha_in_phase)
        return self.beta_in_phase

    def relative_input_phase(self) -> float:
        """The combination 2φ − ϕ entering the photon number equation."""
        return wrap_phase(2.0 * self.alpha_in_phase - self.harmonic_phase())

    def with_drive(self, alpha_in: complex, beta_in: Optional[complex] = None) -> CavityConfig:
        """Copy of the configuration with drives given as complex amplitudes."""
        update = {
            "alpha_in_mod": abs(alpha_in),
            "alpha_in_phase": wrap_phase(cmath.phase(alpha_in)),
        }
        if beta_in is not None:
            update["beta_in_mod"] = abs(beta_in)
            update["beta_in_phase"] = wrap_phase(cmath.phase(beta_in))
        return CavityConfig.model_validate({**self.model_dump(), **update})


class CouplingFactors(BaseModel):
    """Mismatch dependent coupling K = K_r + iK_i and the derived rates.

    Attributes:
        k_r (float): real part, sinc²(x/2)
        k_i (float): imaginary part, (2/x)[sinc(x/2)cos(x/2) − 1]
        mu (Optional[float]): ν·k_r, filled when ν is known
        gamma_cap (Optional[float]): ν·k_i (the cascaded dispersion Γ)
    """

    model_config = ConfigDict(frozen=True)

    k_r: float = Field(ge=0.0, le=1.0)
    k_i: float
    mu: Optional[float] = None
    gamma_cap: Optional[float] = None

    def nonlinear_rates(self, nu: float) -> tuple[float, float]:
        """Return (μ, Γ) for a nonlinear strength ν."""
        return nu * self.k_r, nu * self.k_i

    def with_strength(self, nu: float) -> CouplingFactors:
        mu, gamma_cap = self.nonlinear_rates(nu)
        return self.model_copy(update={"mu": mu, "gamma_cap": gamma_cap})


class SteadyState(BaseModel):
    """A fixed point of the classical mean-field equation.

    Attributes:
        n (float): intracavity photon number
        theta (float): intracavity phase θ in (−π, π]
        residual (float): relative residual of the unexpanded photon number equation
    """

    model_config = ConfigDict(frozen=True)

    n: float = Field(ge=0.0)
    theta: float = 0.0
    residual: float = 0.0

    @field_validator("theta")
    @classmethod
    def reduce_theta(cls, value: float) -> float:
        return wrap_phase(value)

    @property
    def alpha(self) -> complex:
        return cmath.rect(math.sqrt(self.n), self.theta)


class EffectiveGain(BaseModel):
    """Parametric coefficient B in its three normalizations plus the generalized detuning.

    Attributes:
        b_raw (complex): B = 2√μ·β_in − (μ + iΓ)·α² (rate units)
        b_tilde (complex): B / γ_t
        b_hat (complex): √K_r·η_in − (K_r + iK_i)·m
        delta_big (float): Δ = (δ + 2Γn) / γ_t
    """

    model_config = ConfigDict(frozen=True)

    b_raw: complex
    b_tilde: complex
    b_hat: complex
    delta_big: float


class NormalizedParams(BaseModel):
    """Tilde and hat quantities of a fixed point.

    Attributes:
        m (float): normalized photon number νn/γ
        eta_in (complex): harmonic input relative to the OPO threshold, (2√ν/γ)·β_in·e^(−i2θ)
        eta (float): escape efficiency γ_c/(γ_c + γ_s)
        gamma_nl (float): nonlinear decay rate 2μn
        gamma_t (float): total decay rate γ + γ_nl
        gamma_tilde_c (float): γ_c/γ_t
        gamma_tilde_nl (float): γ_nl/γ_t
        gamma_tilde_s (float): γ_s/γ_t
    """

    model_config = ConfigDict(frozen=True)

    m: float = Field(ge=0.0)
    eta_in: complex
    eta: float = Field(gt=0.0, le=1.0)
    gamma_nl: float = Field(ge=0.0)
    gamma_t: float = Field(gt=0.0)
    gamma_tilde_c: float = Field(ge=0.0, le=1.0)
    gamma_tilde_nl: float = Field(ge=0.0, le=1.0)
    gamma_tilde_s: float = Field(ge=0.0, le=1.0)

    @model_validator(mode="after")
    def validate_fluctuation_dissipation(self):
        total = self.gamma_tilde_c + self.gamma_tilde_nl + self.gamma_tilde_s
        if abs(total - 1.0) > FLUCTUATION_DISSIPATION_TOL:
            raise ValueError(f"normalized rates sum to {total!r}, not 1")
        return self


class StabilityReport(BaseModel):
    """Drift eigenvalues of a fixed point.

    Attributes:
        lambda_plus (complex): eigenvalue with the + branch of the square root
        lambda_minus (complex): eigenvalue with the − branch
        stable (bool): both real parts negative
        margin (float): −max(Re λ±)/γ_t
    """

    model_config = ConfigDict(frozen=True)

    lambda_plus: complex
    lambda_minus: complex
    stable: bool
    margin: float

    @staticmethod
    def from_eigenvalues(
        lambda_plus: complex, lambda_minus: complex, gamma_t: float
    ) -> StabilityReport:
        max_re = max(lambda_plus.real, lambda_minus.real)
        return StabilityReport(
            lambda_plus=lambda_plus,
            lambda_minus=lambda_minus,
            stable=max_re < 0.0,
            margin=-max_re / gamma_t,
        )

    @property
    def max_real(self) -> float:
        return max(self.lambda_plus.real, self.lambda_minus.real)


class SpectrumResult(BaseModel):
    """Squeezing and stretching spectra at one frequency.

    Attributes:
        normalization (ENormalization): unit system of `omega`
        mode (EMode): fundamental or harmonic output
        omega (float): analysis frequency
        s_minus (float): squeezed quadrature noise, vacuum = 1
        s_plus (float): stretched quadrature noise, infinite at a divergence
        theta_m (Optional[float]): optimal quadrature phase, None when undefined
        diverged (bool): the point sits on an instability manifold
        physical (bool): False for unstable fixed points
    """

    model_config = ConfigDict(frozen=True)

    normalization: ENormalization
    mode: EMode
    omega: float
    s_minus: float = Field(ge=0.0)
    s_plus: float
    theta_m: Optional[float] = None
    diverged: bool = False
    physical: bool = True

    @model_validator(mode="after")
    def validate_ordering(self):
        if self.s_minus > self.s_plus:
            raise ValueError(f"s_minus={self.s_minus} exceeds s_plus={self.s_plus}")
        return self


class ReferenceSpectrum(BaseModel):
    """Normally ordered spectra :S_−:, :S_+: of the reference system."""

    model_config = ConfigDict(frozen=True)

    s_minus: float
    s_plus: float
    diverged: bool = False


class SqueezingPhase(BaseModel):
    """Optimal quadrature phases of both outputs; None where the correlation vanishes."""

    model_config = ConfigDict(frozen=True)

    fundamental: Optional[float] = None
    harmonic: Optional[float] = None

    @property
    def defined(self) -> bool:
        return self.fundamental is not None and self.harmonic is not None


class Channel(BaseModel):
    name: str
    weight: float = Field(ge=0.0, le=1.0)
    irreversible: bool = False


class ChannelSet(BaseModel):
    """Input channels of a one-mode system with their normalized weights γ̃_n.

    Attributes:
        channels (list[Channel]): channels with weights summing to one
    """

    model_config = ConfigDict(frozen=True)

    channels: list[Channel]

    @model_validator(mode="after")
    def validate_weights(self):
        total = math.fsum(channel.weight for channel in self.channels)
        if abs(total - 1.0) > FLUCTUATION_DISSIPATION_TOL:
            raise ValueError(f"channel weights sum to {total!r}, not 1")
        return self

    @model_validator(mode="after")
    def validate_single_irreversible(self):
        irreversible = [c.name for c in self.channels if c.irreversible]
        if len(irreversible) != 1:
            raise ValueError(
                f"exactly one irreversible channel required, got {irreversible}"
            )
        return self

    @model_validator(mode="after")
    def validate_unique_names(self):
        names = [channel.name for channel in self.channels]
        if len(names) != len(set(names)):
            duplicates = {name for name in names if names.count(name) > 1}
            raise ValueError(f"Duplicate channel names found: {duplicates}")
        return self

    @property
    def names(self) -> list[str]:
        return [channel.name for channel in self.channels]

    def weight(self, name: str) -> float:
        for channel in self.channels:
            if channel.name == name:
                return channel.weight
        raise UnknownChannel(name=name, available=self.names)

    @staticmethod
    def from_params(params: NormalizedParams) -> ChannelSet:
        return ChannelSet(
            channels=[
                Channel(name=EChannel.COUPLING.value, weight=params.gamma_tilde_c),
                Channel(name=EChannel.NONLINEAR.value, weight=params.gamma_tilde_nl),
                Channel(
                    name=EChannel.SCATTERING.value,
                    weight=params.gamma_tilde_s,
                    irreversible=True,
                ),
            ]
        )


# ----------------------------------------------------------------------
class PathSample(BaseModel):
    """One point of an optimum path or parameter scan.

    Unused coordinates stay None. `stable` and `feasible` are always reported;
    samples past a divergence are kept and flagged rather than dropped.
    """

    model_config = ConfigDict(frozen=True)

    m: Optional[float] = None
    dkl: Optional[float] = None
    delta_hat: Optional[float] = None
    eta_in: Optional[float] = None
    s_minus: float
    s_plus: float
    s_bound: Optional[float] = None
    power: Optional[float] = None
    drive_power: Optional[float] = None
    stable: bool = True
    diverged: bool = False
    feasible: bool = True
    converged: bool = True


class PathCurve(BaseModel):
    """A named series of path samples."""

    model_config = ConfigDict(frozen=True)

    name: str
    samples: list[PathSample]

    def column(self, field: str) -> list[Optional[float]]:
        return [getattr(sample, field) for sample in self.samples]

    def to_frame(self) -> pd.DataFrame:
        """Tabular view with only the populated columns, in declaration order."""
        records = [sample.model_dump() for sample in self.samples]
        frame = pd.DataFrame.from_records(records, columns=list(PathSample.model_fields))
        return frame.dropna(axis="columns", how="all")
