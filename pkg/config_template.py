# koszul-lab Configuration Template
# Copy this file to config_local.py and change what you need

# Telegram alerts for long searches (leave empty to log only)
TELEGRAM_BOT_TOKEN = "YOUR_BOT_TOKEN_HERE"  # Get from @BotFather on Telegram
TELEGRAM_CHAT_ID = "YOUR_CHAT_ID_HERE"     # Your chat ID or group chat ID

# Structural mode used when --mode is not given
# ('unique-max', 'top-maximal', 'unique-min-only')
DEFAULT_MODE = "unique-max"

# Search settings
DEFAULT_JOBS = 4                  # worker processes for `search`
DEFAULT_OUTPUT_DIR = "koszul_results"
MIN_SEARCH_HEIGHT = 4             # profiles below this height are skipped unless --no-height-filter

# Lattice engine limits
LATTICE_CLOSURE_CAP = 10000       # hard error (exit 2) beyond this many lattice elements

# Cohomology interval reading
INCLUDE_WINDOW_BOTTOM = False     # True: keep bottom-level vertices other than the global minimum
SKIP_PINCH_PROFILES = True        # False: also search profiles with a singleton interior level
