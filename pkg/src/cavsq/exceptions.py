# ---------------------------------------------------------------------------- #
# SPDX-License-Identifier: MIT-0
# ---------------------------------------------------------------------------- #
from dataclasses import dataclass
from typing import Sequence


class CavsqException(Exception):
    """Base definition of exception that functions part of `cavsq` can raise

    Attributes:
        __error_code__ (int): error code associated with the exception
        __exit_code__ (int): process exit status used by the command line
    """

    __error_code__ = 0
    __exit_code__ = 4
    __app__ = "CSQ"

    @classmethod
    def get_error_number(cls) -> int:
        """Get the numeric error code associated with this exception.

        Returns:
            int: The error code number defined in the __error_code__ class attribute
        """
        return cls.__error_code__

    @classmethod
    def get_error_code(cls) -> str:
        """Get the string representation of the error code"""
        return f"{cls.__app__}-{str(cls.__error_code__).zfill(3)}"

    @classmethod
    def get_exit_code(cls) -> int:
        return cls.__exit_code__

    def __str__(self) -> str:
        """Format error message."""
        return f"Custom exception: {super().__str__()}"


@dataclass
class NonPositiveNoisePower(CavsqException):
    """Exception raised when a noise power cannot be expressed in dB

    Error code: 001

    Attributes:
        value (float): the offending linear noise power
    """

    __error_code__ = 1

    value: float

    def __str__(self):
        return f"[{self.get_error_code()}] Noise power {self.value!r} has no dB value"


@dataclass
class InfeasibleDrive(CavsqException):
    """Exception raised when no real input power sustains the requested photon number

    Error code: 002

    Attributes:
        n (float): requested intracavity photon number
        denominator (float): the non-positive denominator of the input power relation
    """

    __error_code__ = 2
    __exit_code__ = 3

    n: float
    denominator: float

    def __str__(self):
        return (
            f"[{self.get_error_code()}] Photon number n={self.n:.6g} cannot be sustained: "
            f"the input power relation has denominator {self.denominator:.6g} <= 0. "
            "Flipping the sign of both the detuning δ and the cascaded dispersion Γ "
            "yields a consistent set."
        )


@dataclass
class SingularStateEquation(CavsqException):
    """Exception raised when a fixed point sits on a vanishing denominator of the state equation

    Error code: 003

    Attributes:
        where (str): which denominator vanished
        value (float): its value
    """

    __error_code__ = 3

    where: str
    value: float

    def __str__(self):
        return f"[{self.get_error_code()}] Singular {self.where} denominator ({self.value:.3g})"


@dataclass
class RootFindingError(CavsqException):
    """Exception raised when the photon number polynomial cannot be solved

    Error code: 004

    Attributes:
        coefficients (Sequence[float]): ascending polynomial coefficients
        reason (str): what went wrong
    """

    __error_code__ = 4

    coefficients: Sequence[float]
    reason: str

    def __str__(self):
        coeffs = ", ".join(f"{c:.17g}" for c in self.coefficients)
        return f"[{self.get_error_code()}] {self.reason}; coefficients (ascending): [{coeffs}]"


@dataclass
class NotAFixedPoint(CavsqException):
    """Exception raised when a photon number does not satisfy the state equation

    Error code: 005

    Attributes:
        n (float): photon number passed in
        deviation (float): |cos² + sin² − 1| of the recovered phase
    """

    __error_code__ = 5

    n: float
    deviation: float

    def __str__(self):
        return f"[{self.get_error_code()}] n={self.n:.6g} is not a fixed point (phase deviation {self.deviation:.3g})"


@dataclass
class UnknownChannel(CavsqException):
    """Exception raised when a channel name is not part of a channel set

    Error code: 006
    """

    __error_code__ = 6
    __exit_code__ = 2

    name: str
    available: Sequence[str]

    def __str__(self):
        return f"[{self.get_error_code()}] Unknown channel '{self.name}'. Available channels: {', '.join(self.available)}"


@dataclass
class AmbiguousRoot(CavsqException):
    """Exception raised when several fixed points exist and none was selected

    Error code: 007
    """

    __error_code__ = 7
    __exit_code__ = 2

    roots: Sequence[float]

    def __str__(self):
        listing = "\n".join(f"  [{i}] n = {n:.17g}" for i, n in enumerate(self.roots))
        return f"[{self.get_error_code()}] {len(self.roots)} fixed points found, select one with --root:\n{listing}"


@dataclass
class UnstableFixedPoint(CavsqException):
    """Exception raised when spectra are requested at an unstable fixed point

    Error code: 008
    """

    __error_code__ = 8
    __exit_code__ = 3

    n: float
    lambda_max: float

    def __str__(self):
        return f"[{self.get_error_code()}] Fixed point n={self.n:.6g} is unstable (max Re λ = {self.lambda_max:.3g}); pass --allow-unstable to compute anyway"


@dataclass
class FigureCheckFailed(CavsqException):
    """Exception raised when a figure's scalar summary check fails

    Error code: 009
    """

    __error_code__ = 9

    figure: int
    check: str
    value: float

    def __str__(self):
        return f"[{self.get_error_code()}] fig{self.figure}: check '{self.check}' failed (value {self.value!r})"


@dataclass
class InvalidConfigFile(CavsqException):
    """Exception raised when a cavity configuration file cannot be parsed

    Error code: 010
    """

    __error_code__ = 10
    __exit_code__ = 2

    path: str
    reason: str

    def __str__(self):
        return f"[{self.get_error_code()}] Invalid configuration file {self.path}: {self.reason}"
