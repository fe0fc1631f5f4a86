"""
AnnulusTilings Configuration File
Contains all constants, bounds and defaults
"""

# ============================================================================
# TILING ENGINE
# ============================================================================

# Number of random probes for j-/i-independence assertions
INDEPENDENCE_PROBES = 50

# Probe radius (in periods) around the anchor for random positions
PROBE_RADIUS = 6

# ============================================================================
# ANNULUS COMBINATORICS
# ============================================================================

BOUNDARY_P = 'P'
BOUNDARY_Q = 'Q'

# Step letters of lattice paths: R = j+1, U = i+1
STEP_RIGHT = 'R'
STEP_UP = 'U'

# ============================================================================
# ORACLE / FUZZ CONFIGURATION
# ============================================================================

BRUTE_RADIUS_DEFAULT = 3
FUZZ_TRIALS_DEFAULT = 1000
FUZZ_MAX_VALUE = 5
FUZZ_MAX_PERIOD = 3
FUZZ_SEED_DEFAULT = 20240521
FUZZ_WORKERS = 8
PERIOD_SEARCH_BOUND = 4

# Window multiplier (in periods) used to tell canonical classes apart
INJECTIVITY_WINDOW_PERIODS = 3

EXHAUSTIVE_LIMITS = {
    'max_period': 4,
    'max_twist_span': 7,
    'max_ear_depth': 2
}

# Largest denominator the Farey brute-force oracle is asked to handle
FAREY_ORACLE_MAX_DENOMINATOR = 50

# ============================================================================
# CLI CONFIGURATION
# ============================================================================

PROG_NAME = 'annulus-tilings'

EXIT_OK = 0
EXIT_REJECTED = 1
EXIT_MALFORMED = 2

DEFAULT_WINDOW = (0, 5, 0, 5)  # i_min, i_max, j_min, j_max
DEFAULT_FRIEZE_ROWS = 6
DEFAULT_FRIEZE_COLUMNS = 8
JSON_INDENT = 2

LOG_FORMAT = '%(asctime)s %(levelname)s %(name)s: %(message)s'
