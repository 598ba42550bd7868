# ---------------------------------------------------------------------------- #
# SPDX-License-Identifier: MIT-0
# ---------------------------------------------------------------------------- #
"""Pytest configuration for the cavsq tests."""
import sys
from pathlib import Path

import numpy as np
import pytest

# Add src to path so we can import the package without installing it
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from cavsq.types import CavityConfig  # noqa: E402

GOLDEN_DIR = Path(__file__).parent / "golden"


@pytest.fixture
def rng():
    return np.random.default_rng(20260418)


@pytest.fixture
def kerr_bistable_config():
    """μ = 0, Γ = −1, δ = 4: three fixed points at 2γ_c|α_in|² = 7."""
    return CavityConfig(
        gamma_c=1.0,
        gamma_s=0.0,
        delta=4.0,
        nu=np.pi,
        dkl=2.0 * np.pi,
        alpha_in_mod=np.sqrt(3.5),
    )


@pytest.fixture
def shg_config():
    """Phase-matched SHG in units of γ = γ_c = 1, ν = 1."""
    return CavityConfig(gamma_c=1.0, nu=1.0, alpha_in_mod=2.0)


@pytest.fixture
def make_config(rng):
    """Factory of random but well-conditioned configurations."""

    def _make(**overrides) -> CavityConfig:
        values = {
            "gamma_c": rng.uniform(0.5, 2.0),
            "gamma_s": rng.uniform(0.0, 0.5),
            "delta": rng.uniform(-2.0, 2.0),
            "nu": rng.uniform(0.1, 2.0),
            "dkl": rng.uniform(-3.0 * np.pi, 3.0 * np.pi),
            "alpha_in_mod": rng.uniform(0.1, 3.0),
            "alpha_in_phase": rng.uniform(-np.pi, np.pi),
            "beta_in_mod": rng.uniform(0.0, 1.0),
            "beta_in_phase": rng.uniform(-np.pi, np.pi),
        }
        values.update(overrides)
        return CavityConfig(**values)

    return _make
