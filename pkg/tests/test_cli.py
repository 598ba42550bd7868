# ---------------------------------------------------------------------------- #
# SPDX-License-Identifier: MIT-0
# ---------------------------------------------------------------------------- #
"""Tests for the command line front end and the figure data sets."""
import io
import math

import pandas as pd
import pytest
from cavsq.cli import main
from cavsq.exceptions import FigureCheckFailed
from cavsq.figures import FIGURES, FigureCheck, FigureOutput, build_figure

from .conftest import GOLDEN_DIR

# phase-matched SHG with n = 2.5: 2|α_in|² = n(1 + n)²
SHG_CONFIG = "gamma_c=1\nnu=1\nalpha_in_mod=3.913118960624632\n"
GOLDEN_FIGURES = (1, 2, 6, 7, 8, 10)
KERR_CONFIG = "gamma_c=1\ndelta=4\nnu=3.141592653589793\ndkl=6.283185307179586\nalpha_in_mod=1.8708286933869707\n"


@pytest.fixture
def config_file(tmp_path):
    def _write(text: str, name: str = "cavity.cfg"):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)

    return _write


def _run(argv) -> tuple[int, pd.DataFrame]:
    stream = io.StringIO()
    code = main(argv, stream=stream)
    stream.seek(0)
    frame = pd.read_csv(stream) if code == 0 and stream.getvalue() else None
    return code, frame


class TestCouplingCommand:
    def test_rows(self):
        code, frame = _run(["coupling", "--dkl-min", "0", "--dkl-max", str(2.0 * math.pi), "--samples", "5"])
        assert code == 0
        assert list(frame.columns) == ["dkl", "k_r", "k_i", "ki2_minus_3kr2"]
        assert len(frame) == 5
        assert frame["k_r"].iloc[0] == 1.0
        assert frame["k_i"].iloc[-1] == pytest.approx(-1.0 / math.pi)

    def test_inverted_range(self):
        with pytest.raises(SystemExit) as err:
            main(["coupling", "--dkl-min", "1", "--dkl-max", "0"])
        assert err.value.code == 2

    def test_samples_must_be_positive(self):
        with pytest.raises(SystemExit):
            main(["coupling", "--dkl-min", "0", "--dkl-max", "1", "--samples", "0"])


class TestSteadyCommand:
    def test_kerr_bistability(self, config_file):
        code, frame = _run(["steady", config_file(KERR_CONFIG)])
        assert code == 0
        assert list(frame["root"]) == [0, 1, 2]
        assert list(frame["stable"]) == [True, False, True]

    def test_invalid_config(self, config_file, capsys):
        code = main(["steady", config_file("gamma_c=1\nbogus\n")], stream=io.StringIO())
        assert code == 2
        assert "CSQ-010" in capsys.readouterr().err


class TestSpectrumCommand:
    def test_phase_matched_working_point(self, config_file):
        code, frame = _run(["spectrum", config_file(SHG_CONFIG), "--mode", "b"])
        assert code == 0
        first = frame.iloc[0]
        assert first["omega"] == 0.0
        assert first["s_minus"] == pytest.approx(1.0 - 50.0 / 72.25, abs=1e-9)
        assert first["s_minus_db"] == pytest.approx(-5.115, abs=0.01)
        assert len(frame) == 201

    def test_hat_units_match_raw(self, config_file):
        path = config_file(SHG_CONFIG)
        _, raw = _run(["spectrum", path, "--mode", "a"])
        _, hat = _run(["spectrum", path, "--mode", "a", "--normalization", "hat"])
        pd.testing.assert_series_equal(raw["s_minus"], hat["s_minus"], rtol=1e-10)

    def test_custom_grid(self, config_file):
        code, frame = _run(["spectrum", config_file(SHG_CONFIG), "--omega-grid", "0.01:1:10"])
        assert code == 0
        assert len(frame) == 11

    def test_bad_grid(self, config_file):
        code = main(["spectrum", config_file(SHG_CONFIG), "--omega-grid", "1:x"], stream=io.StringIO())
        assert code == 2

    def test_ambiguous_root(self, config_file, capsys):
        code = main(["spectrum", config_file(KERR_CONFIG)], stream=io.StringIO())
        assert code == 2
        assert "select one with --root" in capsys.readouterr().err

    def test_unstable_root(self, config_file):
        path = config_file(KERR_CONFIG)
        assert main(["spectrum", path, "--root", "1"], stream=io.StringIO()) == 3
        code, frame = _run(["spectrum", path, "--root", "1", "--allow-unstable"])
        assert code == 0
        assert not frame["physical"].any()

    def test_root_out_of_range(self, config_file):
        assert main(["spectrum", config_file(KERR_CONFIG), "--root", "7"], stream=io.StringIO()) == 2

    def test_writes_file(self, config_file, tmp_path):
        out = tmp_path / "spectrum.csv"
        code = main(["spectrum", config_file(SHG_CONFIG), "--out", str(out)], stream=io.StringIO())
        assert code == 0
        assert out.read_text(encoding="utf-8").startswith("omega,s_minus,s_plus")


class TestEnvironment:
    @pytest.mark.parametrize("threads", ["abc", "0"])
    def test_bad_thread_count_is_a_usage_error(self, threads, monkeypatch, config_file):
        monkeypatch.setenv("CAVSQ_THREADS", threads)
        assert main(["steady", config_file(KERR_CONFIG)], stream=io.StringIO()) == 2

    def test_valid_thread_count(self, monkeypatch, config_file):
        monkeypatch.setenv("CAVSQ_THREADS", "1")
        code, frame = _run(["steady", config_file(KERR_CONFIG)])
        assert code == 0
        assert len(frame) == 3


class TestFigureCommand:
    def test_writes_csv_and_reports_checks(self, tmp_path):
        stream = io.StringIO()
        assert main(["figure", "1", "--out", str(tmp_path)], stream=stream) == 0
        assert (tmp_path / "fig1_coupling.csv").exists()
        assert "fig1 k_r(0) = 1: ok" in stream.getvalue()

    def test_unknown_figure(self):
        with pytest.raises(SystemExit):
            main(["figure", "12"])


class TestFigures:
    @pytest.mark.parametrize("number", sorted(FIGURES))
    def test_checks_pass(self, number):
        output = build_figure(number)
        output.verify()
        assert output.series
        assert all(check.passed for check in output.checks)

    def test_failed_check_raises(self):
        output = FigureOutput(
            figure=4,
            series={},
            checks=[FigureCheck(name="minimizer_dkl", value=0.0, passed=False)],
        )
        with pytest.raises(FigureCheckFailed):
            output.verify()

    def test_unknown_number(self):
        with pytest.raises(ValueError):
            build_figure(0)

    @pytest.mark.parametrize("number", [2, 9])
    def test_deterministic_output(self, number, tmp_path):
        first = build_figure(number).write(tmp_path / "first")
        second = build_figure(number).write(tmp_path / "second")
        for a, b in zip(first, second):
            assert a.name == b.name
            assert a.read_bytes() == b.read_bytes()

    @pytest.mark.parametrize("number", GOLDEN_FIGURES)
    def test_matches_golden_files(self, number, tmp_path):
        output = build_figure(number)
        output.verify()
        for path in output.write(tmp_path):
            golden = GOLDEN_DIR / path.name
            if not golden.exists():
                # first validated generation freezes the reference
                golden.write_bytes(path.read_bytes())
            assert path.read_bytes() == golden.read_bytes()
