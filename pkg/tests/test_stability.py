# ---------------------------------------------------------------------------- #
# SPDX-License-Identifier: MIT-0
# ---------------------------------------------------------------------------- #
"""Unit tests for fixed point stability and the instability manifolds."""
import math

import numpy as np
import pytest
from cavsq.core import normalized_params
from cavsq.coupling import coupling_factors, for_config
from cavsq.paths import KERR_FACTORS, PHASE_MATCHED
from cavsq.stability import (
    drift_matrix,
    driven_instability_eta,
    eigenvalues,
    hat_eigenvalues,
    kerr_turning_points,
    reference_instability_check,
    shg_instability_detunings,
)
from cavsq.types import SteadyState
from hypothesis import given
from hypothesis import strategies as st


def _random_state(rng) -> SteadyState:
    return SteadyState(n=rng.uniform(0.0, 5.0), theta=rng.uniform(-math.pi, math.pi))


class TestEigenvalues:
    def test_match_drift_matrix(self, make_config, rng):
        for _ in range(10_000):
            cfg = make_config()
            cf = for_config(cfg)
            ss = _random_state(rng)
            report = eigenvalues(cfg, cf, ss)
            numeric = np.linalg.eigvals(drift_matrix(cfg, cf, ss))
            scale = 1.0 + max(abs(numeric))
            for value in (report.lambda_plus, report.lambda_minus):
                assert min(abs(numeric - value)) <= 1e-10 * scale

    def test_no_oscillatory_instability(self, make_config, rng):
        """Complex eigenvalue pairs always have real part −γ_t."""
        for _ in range(2_000):
            cfg = make_config()
            cf = for_config(cfg)
            report = eigenvalues(cfg, cf, _random_state(rng))
            if report.lambda_plus.imag != 0.0:
                assert report.stable
                assert report.lambda_plus.real == report.lambda_minus.real

    def test_empty_cavity_is_stable(self, shg_config):
        report = eigenvalues(shg_config, for_config(shg_config), SteadyState(n=0.0))
        assert report.stable
        assert report.margin > 0.0

    def test_margin_in_units_of_total_decay(self):
        report = hat_eigenvalues(0.0, 0.0, 0.0, PHASE_MATCHED)
        assert report.lambda_plus == -1.0 + 0j
        assert report.margin == 1.0

    def test_raw_and_hat_agree(self, make_config, rng):
        cfg = make_config()
        cf = for_config(cfg)
        ss = _random_state(rng)
        params = normalized_params(cfg, cf, ss)
        raw = eigenvalues(cfg, cf, ss)
        hat = hat_eigenvalues(params.m, params.eta_in, cfg.delta / cfg.gamma, cf)
        assert hat.lambda_plus * cfg.gamma == pytest.approx(raw.lambda_plus, rel=1e-9, abs=1e-12)


class TestKerrTurningPoints:
    def test_below_bistability(self):
        assert kerr_turning_points(1.0, -1.0 / math.pi) is None

    def test_values(self):
        lo, hi = kerr_turning_points(2.0 * math.pi, -1.0 / math.pi)
        assert lo == pytest.approx(4.0 - math.sqrt(3.0), abs=1e-14)
        assert hi == pytest.approx(4.0 + math.sqrt(3.0), abs=1e-14)

    def test_turning_points_are_marginal(self):
        m = 2.0 * math.pi
        for delta_hat in kerr_turning_points(m, KERR_FACTORS.k_i):
            report = hat_eigenvalues(m, 0.0, delta_hat, KERR_FACTORS)
            assert report.max_real == pytest.approx(0.0, abs=1e-12)

    def test_unstable_between_turning_points(self):
        m = 2.0 * math.pi
        lo, hi = kerr_turning_points(m, KERR_FACTORS.k_i)
        assert not hat_eigenvalues(m, 0.0, 0.5 * (lo + hi), KERR_FACTORS).stable
        assert hat_eigenvalues(m, 0.0, hi + 0.1, KERR_FACTORS).stable


class TestShgInstability:
    @given(st.floats(min_value=0.0, max_value=1e3))
    def test_phase_matched_never_unstable(self, m):
        assert shg_instability_detunings(m, PHASE_MATCHED) is None

    @pytest.mark.parametrize("dkl", [5.0, 5.5, 2.0 * math.pi, 7.0])
    def test_detunings_lie_on_the_manifold(self, dkl):
        cf = coupling_factors(dkl)
        m = 50.0
        edges = shg_instability_detunings(m, cf)
        assert edges is not None
        for delta_hat in edges:
            report = hat_eigenvalues(m, 0.0, delta_hat, cf)
            assert report.max_real == pytest.approx(0.0, abs=1e-9)

            gamma_t = 1.0 + 2.0 * cf.k_r * m
            b_tilde = abs(complex(cf.k_r, cf.k_i)) * m / gamma_t
            delta_big = (delta_hat + 2.0 * cf.k_i * m) / gamma_t
            assert reference_instability_check(b_tilde, delta_big)

    def test_closed_outside_window(self):
        assert shg_instability_detunings(50.0, coupling_factors(math.pi)) is None


class TestDrivenInstability:
    @given(st.floats(min_value=0.0, max_value=100.0))
    def test_drives_are_marginal(self, m):
        for eta_in in driven_instability_eta(m):
            report = hat_eigenvalues(m, eta_in, 0.0, PHASE_MATCHED)
            assert report.max_real == pytest.approx(0.0, abs=1e-9 * (1.0 + m))

    def test_values(self):
        assert driven_instability_eta(2.5) == (-3.5, 8.5)


class TestReferenceInstabilityCheck:
    def test_on_and_off_manifold(self):
        assert reference_instability_check(1.0, 0.0)
        assert reference_instability_check(complex(0.0, math.sqrt(5.0)), 2.0)
        assert not reference_instability_check(0.9, 0.0)
