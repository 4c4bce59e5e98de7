"""
Configuration settings for koszul-lab
"""

# Version stamped into every report
VERSION = "1.0.0"
FIELD = "QQ"  # exact rationals; ranks decide Koszulity

# Structural modes
MODE_PROFILES = {
    'unique-max': {
        'name': 'UniqueMax',
        'single_top': True,         # z_N = 1
        'needs_upper_cover': True,  # every non-top vertex is covered from above
    },
    'top-maximal': {
        'name': 'TopMaximal',
        'single_top': False,
        'needs_upper_cover': True,
    },
    'unique-min-only': {
        'name': 'UniqueMinOnly',
        'single_top': False,
        'needs_upper_cover': False,
    },
}

DEFAULT_MODE = 'unique-max'

# Enumeration
MAX_LAYER_SIZE = 6

# Algebra
NUMERIC_BOUND_FACTOR = 2  # default bound for numerical Koszulity is 2*N
MAX_SERIES_DEGREE = 64

# Lattice engine
LATTICE_CLOSURE_CAP = 10000
MAX_DISTRIBUTIVE_SUBSPACES = 12
USE_PINCH_SHORTCUT = True

# Cohomology: False = open window (window bottom level excluded)
INCLUDE_WINDOW_BOTTOM = False

# Search
MIN_SEARCH_HEIGHT = 4  # no non-Koszul example exists at height three or less
SKIP_PINCH_PROFILES = True  # singleton interior levels reduce to smaller graphs
DEFAULT_JOBS = 1
DEFAULT_OUTPUT_DIR = "koszul_results"

# Storage / logging
LOG_FILE = "koszul_lab.log"
REPORT_FILE = "report.json"
SUMMARY_FILE = "summary.csv"

# Telegram alerts (optional)
TELEGRAM_BOT_TOKEN = ""  # To be set by user
TELEGRAM_CHAT_ID = ""    # To be set by user
REQUEST_TIMEOUT = 30

# Import local configuration if available
try:
    from config_local import *
except ImportError:
    pass
