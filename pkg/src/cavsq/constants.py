# ---------------------------------------------------------------------------- #
# SPDX-License-Identifier: MIT-0
#
# Numerical constants shared by the cavsq modules.
# ---------------------------------------------------------------------------- #
import math

SERVICE_NAME = "cavsq"

# Coupling factors: below this |x| the closed form of k_i loses digits to cancellation
SERIES_THRESHOLD = 0.1

# Root acceptance and polishing
REAL_ROOT_IMAG_TOL = 1e-7
ROOT_CLAMP_TOL = 1e-9
ROOT_MERGE_TOL = 1e-9
NEWTON_MAX_ITERATIONS = 8

# Fixed point consistency
UNIT_CIRCLE_TOL = 1e-6
DENOMINATOR_TOL = 1e-14

# Reference model
MANIFOLD_TOL = 1e-9
FLUCTUATION_DISSIPATION_TOL = 1e-12

# Negative rounding dust on a linear noise power is clamped to zero up to this size
NOISE_FLOOR_DUST = 1e-12

# Paths
INSTABILITY_OFFSET = 1e-6
KERR_DKL = 2.0 * math.pi
COARSE_DKL_MAX = 4.0 * math.pi
COARSE_DKL_SAMPLES = 400
GOLDEN_TOL = 1e-10

# Spectra default grid (units of the total decay rate)
OMEGA_MIN = 1e-3
OMEGA_MAX = 10.0
OMEGA_SAMPLES = 200

# CSV
CSV_FLOAT_FORMAT = "%.17g"

DEFAULT_THREADS = 4
