# ---------------------------------------------------------------------------- #
# SPDX-License-Identifier: MIT-0
# ---------------------------------------------------------------------------- #
"""Unit tests for the optimum paths and parameter scans."""
import math

import numpy as np
import pytest
from cavsq.core import to_db
from cavsq.paths import (
    KERR_FACTORS,
    PHASE_MATCHED,
    driven_distance_scan,
    driven_harmonic_path,
    kerr_fixed_detuning_curves,
    kerr_fundamental_path,
    kerr_squeezing_phase_offset,
    low_gamma_nl_mismatch_scan,
    maximum_squeezing_comparison,
    phase_matched_harmonic_noise,
    shg_harmonic_mismatch_path,
    shg_harmonic_optimum_vs_m,
)
from cavsq.spectra import harmonic_output_power, hat_spectra, s_m_bound


class TestKerrPath:
    def test_ideal_escape_reaches_perfect_squeezing(self):
        curve = kerr_fundamental_path(1.0, m_max=math.pi, samples=2)
        assert curve.samples[-1].s_minus == 0.0
        assert curve.samples[-1].diverged

    def test_floor_is_one_minus_eta(self):
        curve = kerr_fundamental_path(0.9, m_max=math.pi * (1.0 - 1e-9), samples=11)
        assert to_db(curve.samples[-1].s_minus) == pytest.approx(-10.0, abs=0.05)

    def test_decreasing_below_instability(self):
        s_minus = np.array(kerr_fundamental_path(0.99).column("s_minus"))
        assert s_minus[0] == 1.0
        assert np.all(np.diff(s_minus) <= 1e-15)

    def test_matches_hat_spectra(self):
        m = 1.7
        fundamental, _ = hat_spectra(m, 0.0, 2.0 * m / math.pi, KERR_FACTORS, 0.9, 0.0)
        sample = kerr_fundamental_path(0.9, m_max=m, samples=2).samples[-1]
        assert sample.s_minus == pytest.approx(fundamental.s_minus, rel=1e-12)

    def test_samples_past_instability_are_flagged(self):
        curve = kerr_fundamental_path(0.99, m_max=1.25 * math.pi, samples=101)
        for sample in curve.samples:
            if abs(sample.m - math.pi) > 1e-9:
                assert sample.stable == (sample.m < math.pi)

    def test_every_sample_is_feasible(self):
        curve = kerr_fundamental_path(0.99, m_max=1.25 * math.pi, samples=101)
        assert all(curve.column("feasible"))
        assert curve.samples[0].drive_power == 0.0

    @pytest.mark.parametrize("eta", [0.0, 1.5])
    def test_rejects_bad_escape_efficiency(self, eta):
        with pytest.raises(ValueError):
            kerr_fundamental_path(eta)

    def test_curve_name(self):
        assert kerr_fundamental_path(0.99, samples=3).name == "eta_0.99"


class TestKerrFixedDetuning:
    def test_zero_detuning_path_is_lower_bound(self):
        m_max = 1.5 * math.pi
        optimum = kerr_fundamental_path(0.99, m_max=m_max)
        for curve in kerr_fixed_detuning_curves(0.99, m_max=m_max):
            for best, other in zip(optimum.samples, curve.samples):
                if best.m < math.pi:
                    assert best.s_minus <= other.s_minus + 1e-12

    def test_names(self):
        names = [curve.name for curve in kerr_fixed_detuning_curves(0.99, samples=3)]
        assert names == ["delta_hat_1", "delta_hat_2", "delta_hat_3"]


class TestKerrPhase:
    def test_offset(self):
        assert kerr_squeezing_phase_offset(KERR_FACTORS) == -math.pi / 4

    def test_requires_dispersion(self):
        with pytest.raises(ValueError):
            kerr_squeezing_phase_offset(PHASE_MATCHED)


class TestLowGammaNlScan:
    @pytest.fixture(scope="class")
    def scan(self):
        return low_gamma_nl_mismatch_scan()

    def test_phase_matched_value(self, scan):
        at_zero = min(scan.samples, key=lambda sample: abs(sample.dkl))
        assert at_zero.dkl == pytest.approx(0.0, abs=1e-12)
        assert at_zero.s_minus == pytest.approx(0.76568, abs=1e-5)

    def test_mismatch_helps(self, scan):
        best = min(scan.samples, key=lambda sample: sample.s_minus)
        assert best.dkl != 0.0
        at_one = low_gamma_nl_mismatch_scan(dkl_range=[1.0]).samples[0]
        assert at_one.s_minus == pytest.approx(0.765354, abs=1e-5)

    def test_symmetric_in_mismatch(self, scan):
        s_minus = np.array(scan.column("s_minus"))
        assert np.max(np.abs(s_minus - s_minus[::-1])) <= 1e-12


class TestShgMismatchPath:
    def test_no_harmonic_coupling_at_two_pi(self):
        curve = shg_harmonic_mismatch_path(50.0, dkl_grid=[2.0 * math.pi])
        sample = curve.samples[0]
        assert sample.s_bound == pytest.approx(1.0, abs=1e-12)
        assert sample.s_minus == pytest.approx(1.0, abs=1e-9)

    def test_tracks_static_bound_inside_window(self):
        curve = shg_harmonic_mismatch_path(50.0, dkl_grid=[5.0, 5.5])
        for sample in curve.samples:
            assert sample.stable
            assert sample.s_minus == pytest.approx(sample.s_bound, abs=1e-3)
            assert sample.s_minus >= sample.s_bound - 1e-12


class TestShgOptimum:
    def test_phase_matched_working_point(self):
        assert phase_matched_harmonic_noise(2.5) == pytest.approx(1.0 - 50.0 / 72.25, rel=1e-12)

    def test_phase_matched_limit(self):
        assert phase_matched_harmonic_noise(1e6) == pytest.approx(1.0 / 9.0, abs=1e-4)
        assert to_db(1.0 / 9.0) == pytest.approx(-9.542, abs=1e-3)

    def test_optimized_never_worse(self):
        optimized, phase_matched = shg_harmonic_optimum_vs_m([0.5, 5.0, 20.0, 50.0])
        for best, reference in zip(optimized.samples, phase_matched.samples):
            assert best.s_minus <= reference.s_minus + 1e-12
            assert best.s_minus >= best.s_bound - 1e-12
            assert 0.0 <= best.dkl <= 4.0 * math.pi

    def test_high_m_reaches_mismatched_window(self):
        optimized, _ = shg_harmonic_optimum_vs_m([50.0])
        sample = optimized.samples[0]
        assert sample.dkl > math.pi
        assert sample.s_minus < phase_matched_harmonic_noise(50.0)

    def test_phase_matched_curve_is_stable(self):
        _, phase_matched = shg_harmonic_optimum_vs_m([0.5, 50.0])
        assert all(sample.stable for sample in phase_matched.samples)
        assert all(sample.dkl == 0.0 for sample in phase_matched.samples)


class TestDrivenPath:
    @pytest.fixture(scope="class")
    def curve(self):
        return driven_harmonic_path(50.0)

    def test_symmetric_about_m(self, curve):
        s_minus = np.array(curve.column("s_minus"))
        assert np.max(np.abs(s_minus - s_minus[::-1])) <= 1e-9

    def test_coherent_where_gain_vanishes(self, curve):
        center = curve.samples[len(curve.samples) // 2]
        assert center.eta_in == pytest.approx(50.0)
        assert center.s_minus == pytest.approx(1.0, abs=1e-9)

    def test_bounded_by_static_floor(self, curve):
        for sample in curve.samples:
            assert sample.s_minus >= s_m_bound(50.0, 1.0) - 1e-12

    def test_edges_are_unstable(self, curve):
        assert not curve.samples[0].stable
        assert not curve.samples[-1].stable

    def test_records_drive_and_output_power(self):
        curve = driven_harmonic_path(2.5, [-1.75, 0.0])
        assert curve.column("eta_in") == [-1.75, 0.0]
        assert curve.column("power") == [harmonic_output_power(2.5, -1.75), 25.0]

    def test_flags_states_without_fundamental_drive(self):
        # η_in = 1 + m cancels the fundamental drive at δ̂ = 0
        curve = driven_harmonic_path(2.5, [0.0, 3.5])
        assert curve.column("feasible") == [True, False]
        assert curve.samples[1].drive_power == 0.0


class TestDistanceScan:
    @pytest.fixture(scope="class")
    def curves(self):
        return driven_distance_scan(np.linspace(0.0, 5.0, 101))

    def test_names(self, curves):
        assert [curve.name for curve in curves] == ["f_0", "f_0.25", "f_0.5", "f_0.75"]

    def test_working_point(self, curves):
        baseline = next(s for s in curves[0].samples if s.m == pytest.approx(2.5))
        half_way = next(s for s in curves[2].samples if s.m == pytest.approx(2.5))
        assert to_db(baseline.s_minus) == pytest.approx(-5.115, abs=0.01)
        assert to_db(half_way.s_minus) == pytest.approx(-7.19, abs=0.02)
        assert half_way.power / baseline.power == pytest.approx(1.8225)

    def test_closer_to_instability_squeezes_more(self, curves):
        for samples in zip(*(curve.samples for curve in curves)):
            if samples[0].m == 0.0:
                continue
            s_minus = [sample.s_minus for sample in samples]
            assert s_minus == sorted(s_minus, reverse=True)

    def test_rejects_fraction_at_instability(self):
        with pytest.raises(ValueError):
            driven_distance_scan([1.0], fractions=(1.0,))


class TestMaximumComparison:
    def test_driven_dominates(self):
        driven, optimized, phase_matched = maximum_squeezing_comparison([0.5, 2.5, 50.0])
        assert [curve.name for curve in (driven, optimized, phase_matched)] == [
            "driven",
            "optimized",
            "phase_matched",
        ]
        for bound, best in zip(driven.samples, optimized.samples):
            assert bound.s_minus <= best.s_minus + 1e-12
        assert driven.samples[-1].s_minus == pytest.approx(1.0 / 101.0)

