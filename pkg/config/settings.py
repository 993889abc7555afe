"""Configuration settings for the SINR capacity game simulator."""

from pathlib import Path

# Base directories
# Resolve project root two levels up from this file
BASE_DIR = Path(__file__).resolve().parent.parent

# Absolute output paths
OUTPUT_DIR = BASE_DIR / "output"  # Experiment CSV files
LOG_DIR = BASE_DIR / "logs"

# CSV output
CSV_FLOAT_FORMAT = "%.6f"
CSV_COMMENT_PREFIX = "# "

# SINR model defaults (simulation section parameters)
DEFAULT_ALPHA = 2.1
DEFAULT_BETA = 0.5
DEFAULT_NOISE = 0.0
DEFAULT_P_MAX = 1.0
DEFAULT_MODEL = "unbounded"

# Numeric tolerances
METRIC_TOLERANCE = 1e-9        # additive slack on the triangle inequality
FEASIBILITY_RTOL = 1e-12       # relative slack so that SINR == beta counts as success
LOAD_TOLERANCE = 1e-12         # slack on affectance load comparisons

# Power schemes
FIXED_POWER_SCHEMES = ("uniform", "mean", "linear", "path_loss")

# Random topology defaults
DEFAULT_WORLD_SIZE = 100.0
DEFAULT_D_MAX = 10.0
DEFAULT_N = 200

# Game settings
LEARNER_KINDS = ("rwm", "exp3")
RWM_MULTIPLIER = 0.5
EXP3_DEFAULT_GAMMA = 0.1
CONVERGENCE_WINDOW = 20
CONVERGENCE_TOLERANCE = 0.05

# Baselines
HW_GRID_POINTS = 25
HW_GRID_LOW = 1e-6
HW_GRID_HIGH = 1.0
HW_REFINE_STEPS = 20
MAX_ORACLE_LINKS = 20
MAX_POWER_ORACLE_LINKS = 8
POWER_GRID_EXPONENTS = tuple(range(0, 11))  # grid points p_max * 2**-k

# Verification
SANDWICH_TOLERANCE = 1e-9
FAILURE_FRACTION_THRESHOLD = 0.25
FAILURE_FRACTION_TOLERANCE = 0.05
MIN_VERIFY_HORIZON = 200

# Experiments
EXPERIMENT_KINDS = ("convergence", "sweep_n", "sweep_dmax", "tight", "verify_suite")
ALGORITHMS = ("game_rwm", "game_exp3", "hw", "hw_bsearch", "brute")
DEFAULT_ROUNDS = 100
DEFAULT_REPLICATES = 10
DEFAULT_SEED = 2011
DEFAULT_N_VALUES = (25, 50, 100, 200)
DEFAULT_D_MAX_VALUES = (2.0, 5.0, 10.0, 20.0, 30.0, 40.0)
FINAL_WINDOW = 100              # sweeps average the last 100 rounds
DEFAULT_TIGHT_D = 9.0
DEFAULT_WORKERS = 1

# Logging
LOG_FILENAME = "sinr_game_errors.log"
LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
LOG_DATE_FORMAT = "%Y-%m-%d %H:%M:%S"

# Exit codes
EXIT_OK = 0
EXIT_CONFIG_ERROR = 1
EXIT_VERIFY_FAILED = 2
EXIT_RUNTIME_ERROR = 3
