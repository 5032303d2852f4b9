""" Copyright Amazon.com, Inc. or its affiliates. All Rights Reserved. """
""" SPDX-License-Identifier: MIT-0 """

WORKLOAD_NAME = "boundary-scope"
SERVICE_NAME = "boundary-scope"
LOG_LEVEL = "WARNING"
THREADS_ENV_VAR = "BOUNDARY_SCOPE_THREADS"

# Tolerances and term budgets
DEFAULT_TOL = 1e-10
MIN_TOL = 1e-14
MAX_TOL = 1e-2
MAX_TERMS = 100_000
EULER_AVERAGING_DEPTH = 14

# Quadrature
QUAD_MIN_LEVEL = 3
QUAD_MAX_LEVEL = 12
HALF_LINE_TAU_RANGE = (-5.5, 6.6)
INTERVAL_TAU_MAX = 4.0
CONTOUR_INITIAL_HEIGHT = 8.0
CONTOUR_MAX_HEIGHT = 2048.0
CONTOUR_INITIAL_STEP = 0.5
CONTOUR_MAX_HALVINGS = 9

# Special functions
HURWITZ_SHIFT = 16
HURWITZ_CORRECTIONS = 12
BERNOULLI_EXACT_MAX = 64
STIRLING_SHIFT = 10.0
STIRLING_TERMS = 16
ZETA_MAX_IMAG = 400.0

# Arg margins (radians)
INTEGRAL_ARG_MARGIN = 0.05
MELLIN_BARNES_DELTA = 0.05
MORDELL_ARG_MARGIN = 0.05
STOKES_RAY_GUARD = 0.02
LATERAL_RAY_OFFSET = 0.15
POLE_DISTANCE_MIN = 1e-6

# Boundary scans
REFLECTION_MIN_Y = 1e-2
FIT_WINDOW_SCALE = 0.25
FIT_MIN_POINTS = 5
FIT_MAX_DENOMINATOR = 20
FIT_MAX_RELATIVE_RESIDUAL = 0.2
UNDERFLOW_EXPONENT = 700.0
SINGULAR_SUM_MAX_TERMS = 10_000_000

# fig command defaults
FIG1_N_MAX = 3000
FIG2_RE_T = -2e-4
FIG2_Y_RANGE = (0.5, 1.5)
FIG2_POINTS = 2000
FIG2_K_MAX = 800

# Emission
CSV_FLOAT_FORMAT = "%.15g"
SVG_HASH_SALT = "boundary-scope"
