"""
Configuration settings for the qchu-kit model checker
"""
import os
from pathlib import Path

from dotenv import load_dotenv

# Project paths
PROJECT_ROOT = Path(__file__).parent.parent
FIXTURES_DIR = PROJECT_ROOT / "fixtures"

env_file = PROJECT_ROOT / ".env"
if env_file.exists():
    load_dotenv(env_file)

# Size limits
SATURATE_LIMIT = int(os.getenv("QCHU_SATURATE_LIMIT", "4096"))
CLOSED_SET_LIMIT = int(os.getenv("QCHU_CLOSED_SET_LIMIT", "65536"))
DESCRIPTION_LIMIT = int(os.getenv("QCHU_DESCRIPTION_LIMIT", "20"))
PRODUCT_LIMIT = int(os.getenv("QCHU_PRODUCT_LIMIT", "512"))
RANDOM_CHU_MAX = int(os.getenv("QCHU_RANDOM_CHU_MAX", "64"))

# Oracle configuration
ORACLE_MAX_ELEMENTS = int(os.getenv("QCHU_ORACLE_MAX_ELEMENTS", "12"))
MAP_SEARCH_MAX_STATES = int(os.getenv("QCHU_MAP_SEARCH_MAX_STATES", "9"))
SUBSET_CHECK_CAP = int(os.getenv("QCHU_SUBSET_CHECK_CAP", "4"))

# Generator parameter ranges (inclusive)
BOOLEAN_RANGE = (2, 6)
MO_RANGE = (1, 8)

# Logging
LOG_LEVEL = os.getenv("QCHU_LOG_LEVEL", "WARNING")
