# ---------------------------------------------------------------------------- #
# SPDX-License-Identifier: MIT-0
#
# Figure data sets: each builder returns named tables plus the scalar checks
# that must pass before anything is written.
# ---------------------------------------------------------------------------- #
from __future__ import annotations

import math
from pathlib import Path
from typing import Callable

import numpy as np
import pandas as pd
from aws_lambda_powertools import Logger
from pydantic import BaseModel, ConfigDict

from .constants import COARSE_DKL_MAX, CSV_FLOAT_FORMAT, KERR_DKL, SERVICE_NAME
from .core import to_db, to_db_report
from .coupling import coupling_factors, ki2_minus_3kr2, shg_like_window
from .exceptions import FigureCheckFailed
from .paths import (
    driven_distance_scan,
    driven_harmonic_path,
    kerr_fixed_detuning_curves,
    kerr_fundamental_path,
    low_gamma_nl_mismatch_scan,
    maximum_squeezing_comparison,
    phase_matched_harmonic_noise,
    shg_harmonic_mismatch_path,
    shg_harmonic_optimum_vs_m,
)
from .spectra import s_m_bound
from .types import PathCurve, PathSample

logger = Logger(service=SERVICE_NAME, child=True)

KERR_ETAS = (0.9, 0.99, 1.0)
DISTANCE_FRACTIONS = (0.0, 0.25, 0.5, 0.75)
HIGH_M = 50.0
# Working point of the driven comparison
WORKING_POINT_M = 2.5


class FigureCheck(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str
    value: float
    passed: bool


class FigureOutput(BaseModel):
    """Tables of one figure keyed by series name, with its scalar checks."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    figure: int
    series: dict[str, pd.DataFrame]
    checks: list[FigureCheck]

    def verify(self) -> None:
        """Raise on the first failed check."""
        for check in self.checks:
            if not check.passed:
                raise FigureCheckFailed(
                    figure=self.figure, check=check.name, value=check.value
                )

    def write(self, out_dir: str | Path) -> list[Path]:
        out_dir = Path(out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        written = []
        for name, frame in self.series.items():
            path = out_dir / f"fig{self.figure}_{name}.csv"
            frame.to_csv(
                path, index=False, float_format=CSV_FLOAT_FORMAT, lineterminator="\n"
            )
            written.append(path)
        logger.info(
            "Wrote figure data",
            extra={"figure": self.figure, "files": [str(p) for p in written]},
        )
        return written


def _check(name: str, value: float, passed: bool) -> FigureCheck:
    return FigureCheck(name=name, value=float(value), passed=bool(passed))


def _with_db(curve: PathCurve) -> pd.DataFrame:
    frame = curve.to_frame()
    frame["s_minus_db"] = [to_db_report(s) for s in frame["s_minus"]]
    frame["s_plus_db"] = [to_db_report(s) for s in frame["s_plus"]]
    return frame


def _coupling_frame(dkl_grid: np.ndarray) -> pd.DataFrame:
    rows = []
    for dkl in dkl_grid:
        factors = coupling_factors(float(dkl))
        rows.append(
            {
                "dkl": float(dkl),
                "k_r": factors.k_r,
                "k_i": factors.k_i,
                "ki2_minus_3kr2": factors.k_i**2 - 3.0 * factors.k_r**2,
            }
        )
    return pd.DataFrame.from_records(rows)


def figure_1() -> FigureOutput:
    """K_r and K_i versus mismatch."""
    frame = _coupling_frame(np.linspace(-4.0 * math.pi, 4.0 * math.pi, 801))
    at_2pi = coupling_factors(KERR_DKL)
    return FigureOutput(
        figure=1,
        series={"coupling": frame[["dkl", "k_r", "k_i"]]},
        checks=[
            _check("k_r(0)", coupling_factors(0.0).k_r, coupling_factors(0.0).k_r == 1.0),
            _check("k_r(2pi)", at_2pi.k_r, at_2pi.k_r <= 1e-12),
            _check("k_i(2pi)", at_2pi.k_i, abs(at_2pi.k_i + 1.0 / math.pi) <= 1e-12),
        ],
    )


def figure_2() -> FigureOutput:
    """Kerr-branch optimum path for several escape efficiencies."""
    curves = {}
    for eta in KERR_ETAS:
        curve = kerr_fundamental_path(eta, m_max=1.25 * math.pi)
        curves[curve.name] = curve

    below_instability = [s.s_minus for s in curves["eta_0.9"].samples if s.m <= math.pi]
    asymptote = to_db(min(below_instability))
    ideal = kerr_fundamental_path(1.0, m_max=math.pi, samples=2).samples[-1].s_minus
    return FigureOutput(
        figure=2,
        series={name: _with_db(curve) for name, curve in curves.items()},
        checks=[
            _check("eta_0.9_floor_db", asymptote, abs(asymptote + 10.0) <= 0.05),
            _check("eta_1_at_instability", ideal, ideal == 0.0),
        ],
    )


def figure_3() -> FigureOutput:
    """Fixed-detuning Kerr curves against the Δ = 0 path."""
    m_max = 1.5 * math.pi
    optimum = kerr_fundamental_path(0.99, m_max=m_max)
    fixed = kerr_fixed_detuning_curves(0.99, m_max=m_max)
    series = {"optimum": _with_db(optimum)}
    series.update({curve.name: _with_db(curve) for curve in fixed})

    worst = -math.inf
    for curve in fixed:
        for best, other in zip(optimum.samples, curve.samples):
            if best.m < math.pi:
                worst = max(worst, best.s_minus - other.s_minus)
    return FigureOutput(
        figure=3,
        series=series,
        checks=[_check("optimum_lower_bound", worst, worst <= 1e-12)],
    )


def figure_4() -> FigureOutput:
    """Fundamental squeezing versus mismatch for a weak pump."""
    curve = low_gamma_nl_mismatch_scan()
    best = min(curve.samples, key=lambda sample: sample.s_minus)
    return FigureOutput(
        figure=4,
        series={"scan": _with_db(curve)},
        checks=[_check("minimizer_dkl", best.dkl, abs(best.dkl) > 0.0)],
    )


def figure_5() -> FigureOutput:
    """K_i² − 3K_r² versus mismatch and the edge of the SHG-like window."""
    frame = _coupling_frame(np.linspace(0.0, COARSE_DKL_MAX, 801))
    edge = shg_like_window()
    return FigureOutput(
        figure=5,
        series={"shg_window": frame[["dkl", "ki2_minus_3kr2"]]},
        checks=[
            _check("window_edge", edge, math.pi < edge < 2.0 * math.pi),
            _check("positive_at_2pi", ki2_minus_3kr2(KERR_DKL), ki2_minus_3kr2(KERR_DKL) > 0.0),
        ],
    )


def figure_6() -> FigureOutput:
    """Harmonic noise at m = 50 along the near-instability detuning."""
    curve = shg_harmonic_mismatch_path(HIGH_M)
    floor = s_m_bound(HIGH_M, coupling_factors(KERR_DKL).k_r)
    return FigureOutput(
        figure=6,
        series={"mismatch": _with_db(curve)},
        checks=[_check("s_m_at_2pi", floor, abs(floor - 1.0) <= 1e-12)],
    )


def figure_7() -> FigureOutput:
    """Optimized against phase-matched harmonic squeezing versus m."""
    optimized, phase_matched = shg_harmonic_optimum_vs_m(np.linspace(0.5, HIGH_M, 100))
    limit = phase_matched_harmonic_noise(1e6)
    excess = max(
        best.s_minus - reference.s_minus
        for best, reference in zip(optimized.samples, phase_matched.samples)
    )
    return FigureOutput(
        figure=7,
        series={"optimized": _with_db(optimized), "phase_matched": _with_db(phase_matched)},
        checks=[
            _check("phase_matched_limit", limit, abs(limit - 1.0 / 9.0) <= 1e-4),
            _check("optimized_not_worse", excess, excess <= 1e-12),
        ],
    )


def figure_8() -> FigureOutput:
    """Harmonic noise versus a real harmonic drive at m = 50."""
    curve = driven_harmonic_path(HIGH_M)
    s_minus = np.array(curve.column("s_minus"))
    asymmetry = float(np.max(np.abs(s_minus - s_minus[::-1])))
    center = float(s_minus[len(s_minus) // 2])
    return FigureOutput(
        figure=8,
        series={"drive": _with_db(curve)},
        checks=[
            _check("symmetry_about_m", asymmetry, asymmetry <= 1e-9),
            _check("coherent_at_m", center, abs(center - 1.0) <= 1e-9),
        ],
    )


def _distance_curves() -> list[PathCurve]:
    return driven_distance_scan(np.linspace(0.0, 5.0, 101), DISTANCE_FRACTIONS)


def _at_working_point(curves: list[PathCurve], name: str) -> PathSample:
    curve = next(curve for curve in curves if curve.name == name)
    return min(curve.samples, key=lambda sample: abs(sample.m - WORKING_POINT_M))


def figure_9() -> FigureOutput:
    """Harmonic noise versus m at several distances from the drive instability."""
    curves = _distance_curves()
    baseline = to_db(_at_working_point(curves, "f_0").s_minus)
    half_way = to_db(_at_working_point(curves, "f_0.5").s_minus)
    return FigureOutput(
        figure=9,
        series={curve.name: _with_db(curve) for curve in curves},
        checks=[
            _check("baseline_db", baseline, abs(baseline + 5.15) <= 0.2),
            _check("half_way_db", half_way, -7.4 <= half_way <= -7.0),
        ],
    )


def figure_10() -> FigureOutput:
    """Harmonic output power for the distances of figure 9, relative to SHG."""
    curves = _distance_curves()
    baseline = np.array(curves[0].column("power"))
    series = {}
    for curve in curves:
        frame = curve.to_frame()[["m", "eta_in", "power"]].copy()
        power = frame["power"].to_numpy()
        frame["power_ratio"] = np.divide(
            power, baseline, out=np.ones_like(power), where=baseline > 0.0
        )
        series[curve.name] = frame

    ratio = (
        _at_working_point(curves, "f_0.5").power / _at_working_point(curves, "f_0").power
    )
    return FigureOutput(
        figure=10,
        series=series,
        checks=[_check("half_way_power_ratio", ratio, 1.8 <= ratio <= 2.2)],
    )


def figure_11() -> FigureOutput:
    """Best harmonic squeezing versus m: driven, optimized and phase matched."""
    curves = maximum_squeezing_comparison(np.linspace(0.5, HIGH_M, 100))
    driven, optimized = curves[0], curves[1]
    gap = max(
        bound.s_minus - best.s_minus for bound, best in zip(driven.samples, optimized.samples)
    )
    return FigureOutput(
        figure=11,
        series={curve.name: _with_db(curve) for curve in curves},
        checks=[_check("driven_dominates", gap, gap <= 1e-12)],
    )


FIGURES: dict[int, Callable[[], FigureOutput]] = {
    1: figure_1,
    2: figure_2,
    3: figure_3,
    4: figure_4,
    5: figure_5,
    6: figure_6,
    7: figure_7,
    8: figure_8,
    9: figure_9,
    10: figure_10,
    11: figure_11,
}


def build_figure(number: int) -> FigureOutput:
    if number not in FIGURES:
        raise ValueError(f"unknown figure {number}; choose from {sorted(FIGURES)}")
    output = FIGURES[number]()
    for check in output.checks:
        log = logger.info if check.passed else logger.warning
        log("Figure check", extra={"figure": number, "check": check.name, "value": check.value})
    return output
