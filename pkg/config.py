"""
config.py

Global configuration constants and tuning parameters.
Centralized defaults for the verification suites, the spectral grid, the
Kirchhoff quadrature and the peeling experiments.
"""

# --- Output ---
OUTPUT_DIR = "results"
SAMPLES_CSV = "samples.csv"
FITS_CSV = "fits.csv"
SUMMARY_TXT = "summary.txt"

# Environment variable holding the worker count for parallel suites
WORKERS_ENV_VAR = "PEEL_WORKERS"
DEFAULT_WORKERS = 1

# --- Identity Suites ---
DEFAULT_SEED = 1
DEFAULT_TRIALS = 100
DEFAULT_SPIN_MAX = 4
IDENTITY_VALENCES = (2, 3, 4, 5, 6, 7, 8)
IDENTITY_MAX_DEGREE = 5
SPLITTING_TRIALS = 20
SPLITTING_DEGREE = 4

# Random coefficient ranges (numerators / denominators of Gaussian rationals)
COEFF_NUMERATOR_RANGE = 9
COEFF_DENOMINATOR_MAX = 5

# --- Symbols ---
SYMBOL_TRIALS = 50
SYMBOL_RANK_TOLERANCE = 1e-9
HERMITIAN_TOLERANCE = 1e-12
EIGEN_IMAG_TOLERANCE = 1e-10

# --- Spectral Grid ---
GRID_HALF_LENGTH = 16.0
GRID_RESOLUTION = 64
SOURCE_WIDTH = 1.5  # Gaussian width of the random compact sources
SPECTRAL_TAIL_TOLERANCE = 1e-8
DIVERGENCE_TOLERANCE = 1e-10
MEAN_TOLERANCE = 1e-10
ROUND_TRIP_TOLERANCE = 1e-8
ORTHOGONALITY_TOLERANCE = 1e-8
BOUNDARY_TOLERANCE = 1e-12
HERTZ_PROBLEMS = 20

# --- Weighted Norms ---
NORM_RADIAL_NODES = 96
NORM_ANGULAR_ORDERS = (24, 48)

# --- Kirchhoff Quadrature ---
QUAD_THETA = 64
QUAD_PHI = 128
QUADRATURE_RULE = "radial"  # "gauss" or "radial"
RADIAL_RULE_MIN_RADIUS = 1e-6
MAX_DERIVATIVE_ORDER = 6
DOUBLING_TOLERANCE = 1e-6
WAVE_CHECK_DELTAS = (-3.5, -2.5, -2.0, -1.5, -1.0, -0.5, 0.5, 1.5)
WAVE_CHECK_POINTS = (0.0, 0.5, 2.0, 10.0, 50.0)

# --- Null Frame ---
THETA_MARGIN = 1e-3
FRAME_TOLERANCE = 1e-12
RECURSION_TOLERANCE = 1e-6
RECURSION_STEP = 1e-3

# --- Peeling Experiments ---
FIXED_U = 5.0
V_SWEEP = (50.0, 800.0)
FIXED_V = 1000.0
U_SWEEP = (4.0, 100.0)
INTERIOR_T_SWEEP = (20.0, 400.0)
INTERIOR_RADIUS_RATIO = 0.1
SWEEP_SAMPLES = 16
FIT_MIN_V = 50.0
FIT_MIN_U = 2.0
MIN_FIT_SAMPLES = 8
SLOPE_TOLERANCE = 0.2
CASE_BOUNDARY_MARGIN = 0.4
ENVELOPE_MARGIN = 10.0
SAMPLE_THETA = 1.1
SAMPLE_PHI = 0.7

# --- Scalar Decay ---
SCALAR_V_SLOPE_TOLERANCE = 0.1
SCALAR_U_SLOPE_TOLERANCE = 0.15
SCALAR_DECAY_DELTAS = (-2.5, 0.5)
