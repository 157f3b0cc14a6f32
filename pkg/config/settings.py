"""Application settings for the LSAT semantics toolkit"""

import os
from pathlib import Path
from dotenv import load_dotenv

# Load environment variables
load_dotenv()

# Build paths inside the project
BASE_DIR = Path(__file__).resolve().parent.parent

# Logging settings
LOG_LEVEL = os.getenv('LSATSEM_LOG_LEVEL', 'WARNING')
LOG_FORMAT = os.getenv('LSATSEM_LOG_FORMAT', 'text')  # 'text' or 'json'
LOG_DIR = os.path.join(BASE_DIR, 'logs')
LOG_FILE = os.getenv('LSATSEM_LOG_FILE', '')  # empty disables file logging

# Exploration settings
EXPLORE_DEPTH = int(os.getenv('LSATSEM_EXPLORE_DEPTH', '10'))
EXPLORE_MAX_STATES = int(os.getenv('LSATSEM_EXPLORE_MAX_STATES', '100000'))
LANGUAGE_MAX_PAIRS = int(os.getenv('LSATSEM_LANGUAGE_MAX_PAIRS', '200000'))

# Automaton construction settings
POSTSET_CAP = int(os.getenv('LSATSEM_POSTSET_CAP', '1000000'))
INSTANCE_HORIZON = int(os.getenv('LSATSEM_INSTANCE_HORIZON', '2'))
INTERNAL_STEP_FACTOR = int(os.getenv('LSATSEM_INTERNAL_STEP_FACTOR', '4'))
SUGGEST_MAX_CANDIDATES = int(os.getenv('LSATSEM_SUGGEST_MAX_CANDIDATES', '10000'))

# Model defaults
DEFAULT_MOVEMENT_DISTANCE = float(os.getenv('LSATSEM_DEFAULT_DISTANCE', '1.0'))
