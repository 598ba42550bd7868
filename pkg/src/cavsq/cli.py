# ---------------------------------------------------------------------------- #
# SPDX-License-Identifier: MIT-0
#
# Command line front end. CSV goes to stdout (or --out), logs to stderr.
# ---------------------------------------------------------------------------- #
from __future__ import annotations

import argparse
import logging
import sys
from typing import Optional, Sequence, TextIO

import numpy as np
import pandas as pd
from aws_lambda_powertools import Logger
from pydantic import ValidationError

from .constants import CSV_FLOAT_FORMAT, SERVICE_NAME
from .core import normalized_params, to_db_report
from .coupling import coupling_factors, for_config
from .exceptions import AmbiguousRoot, CavsqException, UnstableFixedPoint
from .figures import FIGURES, build_figure
from .settings import RuntimeSettings, load_config_file
from .spectra import hat_spectra, raw_spectra, spectrum_grid
from .stability import eigenvalues
from .steady_state import fixed_points
from .types import EMode, ENormalization, SteadyState

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERICAL = 4


def _write_csv(frame: pd.DataFrame, out: Optional[str], stream: TextIO) -> None:
    options = {"index": False, "float_format": CSV_FLOAT_FORMAT, "lineterminator": "\n"}
    if out is None:
        frame.to_csv(stream, **options)
    else:
        frame.to_csv(out, **options)


# -------- Subcommands -------- #
def cmd_coupling(args: argparse.Namespace, stream: TextIO) -> int:
    """K_r, K_i and K_i² − 3K_r² on a uniform mismatch grid."""
    rows = []
    for dkl in np.linspace(args.dkl_min, args.dkl_max, args.samples):
        factors = coupling_factors(float(dkl))
        rows.append(
            {
                "dkl": float(dkl),
                "k_r": factors.k_r,
                "k_i": factors.k_i,
                "ki2_minus_3kr2": factors.k_i**2 - 3.0 * factors.k_r**2,
            }
        )
    _write_csv(pd.DataFrame.from_records(rows), args.out, stream)
    return EXIT_OK


def cmd_steady(args: argparse.Namespace, stream: TextIO) -> int:
    """Every fixed point of the configuration with its stability."""
    cfg = load_config_file(args.config)
    cf = for_config(cfg)
    rows = []
    for index, ss in enumerate(fixed_points(cfg, cf)):
        report = eigenvalues(cfg, cf, ss)
        rows.append(
            {
                "root": index,
                "n": ss.n,
                "theta": ss.theta,
                "lambda_plus_re": report.lambda_plus.real,
                "lambda_plus_im": report.lambda_plus.imag,
                "lambda_minus_re": report.lambda_minus.real,
                "lambda_minus_im": report.lambda_minus.imag,
                "stable": report.stable,
                "residual": ss.residual,
            }
        )
    columns = ["root", "n", "theta", "lambda_plus_re", "lambda_plus_im"]
    columns += ["lambda_minus_re", "lambda_minus_im", "stable", "residual"]
    _write_csv(pd.DataFrame.from_records(rows, columns=columns), args.out, stream)
    return EXIT_OK


def _select_root(states: list[SteadyState], index: Optional[int]) -> SteadyState:
    if index is None:
        if len(states) != 1:
            raise AmbiguousRoot(roots=[ss.n for ss in states])
        return states[0]
    if not 0 <= index < len(states):
        raise AmbiguousRoot(roots=[ss.n for ss in states])
    return states[index]


def _parse_omega_grid(text: str, scale: float) -> np.ndarray:
    """`min:max:samples` log grid plus ω = 0, in units of `scale`."""
    try:
        lo, hi, samples = text.split(":")
        return spectrum_grid(float(hi), int(samples), float(lo), scale=scale)
    except ValueError as err:
        raise argparse.ArgumentTypeError(f"bad --omega-grid {text!r}: {err}")


def cmd_spectrum(args: argparse.Namespace, stream: TextIO) -> int:
    """Noise spectra of one fixed point on a frequency grid."""
    cfg = load_config_file(args.config)
    cf = for_config(cfg)
    ss = _select_root(fixed_points(cfg, cf), args.root)

    report = eigenvalues(cfg, cf, ss)
    if not report.stable and not args.allow_unstable:
        raise UnstableFixedPoint(n=ss.n, lambda_max=report.max_real)

    params = normalized_params(cfg, cf, ss)
    normalization = ENormalization(args.normalization)
    if normalization is ENormalization.HAT:
        scale = 1.0 + 2.0 * cf.k_r * params.m

        def evaluate(omega: float):
            return hat_spectra(
                params.m, params.eta_in, cfg.delta / cfg.gamma, cf, params.eta, omega
            )

    else:
        scale = params.gamma_t

        def evaluate(omega: float):
            return raw_spectra(cfg, cf, ss, omega)

    if args.omega_grid is None:
        grid = spectrum_grid(scale=scale)
    else:
        grid = _parse_omega_grid(args.omega_grid, scale)

    mode = EMode.FUNDAMENTAL if args.mode == "a" else EMode.HARMONIC
    rows = []
    for omega in grid:
        fundamental, harmonic = evaluate(float(omega))
        result = fundamental if mode is EMode.FUNDAMENTAL else harmonic
        rows.append(
            {
                "omega": result.omega,
                "s_minus": result.s_minus,
                "s_plus": result.s_plus,
                "s_minus_db": to_db_report(result.s_minus),
                "s_plus_db": to_db_report(result.s_plus),
                "theta_m": result.theta_m,
                "diverged": result.diverged,
                "physical": result.physical,
            }
        )
    _write_csv(pd.DataFrame.from_records(rows), args.out, stream)
    return EXIT_OK


def cmd_figure(args: argparse.Namespace, stream: TextIO) -> int:
    """Data sets of one figure (or all), checked before writing."""
    numbers = sorted(FIGURES) if args.figure == "all" else [int(args.figure)]
    for number in numbers:
        output = build_figure(number)
        output.verify()
        output.write(args.out)
        for check in output.checks:
            stream.write(f"fig{number} {check.name} = {check.value:.6g}: ok\n")
    return EXIT_OK


# -------- Parser -------- #
def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cavsq",
        description="Quantum noise of a singly resonant second-order cavity.",
    )
    parser.add_argument("--verbose", action="store_true", help="log at DEBUG level")
    subparsers = parser.add_subparsers(dest="command", required=True)

    coupling = subparsers.add_parser("coupling", help="coupling factors versus mismatch")
    coupling.add_argument("--dkl-min", type=float, required=True)
    coupling.add_argument("--dkl-max", type=float, required=True)
    coupling.add_argument("--samples", type=_positive_int, default=101)
    coupling.add_argument("--out", help="output CSV (default stdout)")
    coupling.set_defaults(handler=cmd_coupling)

    steady = subparsers.add_parser("steady", help="fixed points and their stability")
    steady.add_argument("config", help="key=value cavity configuration file")
    steady.add_argument("--out", help="output CSV (default stdout)")
    steady.set_defaults(handler=cmd_steady)

    spectrum = subparsers.add_parser("spectrum", help="noise spectra of a fixed point")
    spectrum.add_argument("config", help="key=value cavity configuration file")
    spectrum.add_argument("--mode", choices=["a", "b"], default="b")
    spectrum.add_argument(
        "--normalization",
        choices=[ENormalization.RAW.value, ENormalization.HAT.value],
        default=ENormalization.RAW.value,
    )
    spectrum.add_argument(
        "--omega-grid",
        help="min:max:samples log grid in units of the total decay (ω = 0 always added)",
    )
    spectrum.add_argument("--root", type=int, help="index of the fixed point to use")
    spectrum.add_argument("--allow-unstable", action="store_true")
    spectrum.add_argument("--out", help="output CSV (default stdout)")
    spectrum.set_defaults(handler=cmd_spectrum)

    figure = subparsers.add_parser("figure", help="write figure data as CSV")
    figure.add_argument("figure", choices=[str(n) for n in sorted(FIGURES)] + ["all"])
    figure.add_argument("--out", default=".", help="output directory")
    figure.set_defaults(handler=cmd_figure)
    return parser


def _configure_logging(verbose: bool) -> Logger:
    return Logger(
        service=SERVICE_NAME,
        level="DEBUG" if verbose else "INFO",
        logger_handler=logging.StreamHandler(sys.stderr),
    )


def main(argv: Optional[Sequence[str]] = None, stream: TextIO = sys.stdout) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "coupling" and args.dkl_min > args.dkl_max:
        parser.error("--dkl-min must not exceed --dkl-max")

    root_logger = _configure_logging(args.verbose)
    try:
        settings = RuntimeSettings.from_env()
        if not args.verbose:
            root_logger.setLevel(settings.log_level)
        return args.handler(args, stream)
    except argparse.ArgumentTypeError as err:
        parser.print_usage(sys.stderr)
        root_logger.warning(str(err))
        return EXIT_USAGE
    except ValidationError as err:
        root_logger.warning("Validation error", errors=err.errors(include_url=False))
        return EXIT_USAGE
    except CavsqException as err:
        root_logger.warning(str(err), error_code=err.get_error_code())
        sys.stderr.write(f"{err}\n")
        return err.get_exit_code()
    except Exception as err:
        root_logger.exception(err)
        return EXIT_NUMERICAL
