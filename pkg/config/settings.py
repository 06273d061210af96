"""
Configuration settings for the Straub polynomial engine.
Environment variables can be set in a .env file or directly in the environment.
"""
import logging
import os
import sys
from enum import Enum
from pathlib import Path
from typing import Any, Dict

from dotenv import load_dotenv

# Load environment variables from .env file if it exists
load_dotenv()

# Base paths
ROOT_DIR = Path(__file__).parent.parent
TESTS_DIR = ROOT_DIR / "tests"
DATA_DIR = ROOT_DIR / "data"
TEST_DATA_DIR = TESTS_DIR / "data"
REFERENCE_FILE = DATA_DIR / "reference_values.json"
REPORTS_DIR = Path(os.getenv("STRAUB_REPORTS_DIR", str(ROOT_DIR / "reports")))


class OutputFormat(str, Enum):
    """Supported CLI output formats."""
    PLAIN = "plain"
    TREE = "tree"


class Command(str, Enum):
    """CLI sub-commands."""
    COUNT = "count"
    POLY = "poly"
    DIST = "dist"
    MOMENTS = "moments"
    FIT = "fit"
    LIMITS = "limits"
    ORACLE = "oracle"
    VERIFY = "verify"


# Cache of computed Straub polynomials
CACHE_DIR = Path(os.getenv("STRAUB_CACHE_DIR", str(ROOT_DIR / ".straub-cache")))

# Execution settings
DEFAULT_JOBS = int(os.getenv("STRAUB_JOBS", "1"))
ORACLE_MAX_N = int(os.getenv("STRAUB_ORACLE_MAX_N", "3"))
COUNT_MAX_N = int(os.getenv("STRAUB_COUNT_MAX_N", "400"))
VERIFY_MAX_N = int(os.getenv("STRAUB_VERIFY_MAX_N", "12"))

# Product size (terms x terms) above which q-slices are multiplied as packed big integers
KRONECKER_THRESHOLD = int(os.getenv("STRAUB_KRONECKER_THRESHOLD", "4096"))

# Logging settings (same layout as the pytest log_cli configuration)
LOG_LEVEL = os.getenv("STRAUB_LOG_LEVEL", "INFO").upper()
LOG_FORMAT = "%(asctime)s [%(levelname)8s] %(message)s (%(filename)s:%(lineno)s)"
LOG_DATE_FORMAT = "%Y-%m-%d %H:%M:%S"

# Highest moment order handled (the seventh moment is the last published one)
MAX_MOMENT_ORDER = 7


def configure_logging(level: str = LOG_LEVEL) -> None:
    """Log to stderr; leaves an already configured root logger (e.g. under pytest) alone."""
    logging.basicConfig(level=level, format=LOG_FORMAT, datefmt=LOG_DATE_FORMAT, stream=sys.stderr)


def get_env_config() -> Dict[str, Any]:
    """Get current environment configuration."""
    return {
        "cache_dir": str(CACHE_DIR),
        "reports_dir": str(REPORTS_DIR),
        "jobs": DEFAULT_JOBS,
        "oracle_max_n": ORACLE_MAX_N,
        "count_max_n": COUNT_MAX_N,
        "verify_max_n": VERIFY_MAX_N,
        "kronecker_threshold": KRONECKER_THRESHOLD,
        "log_level": LOG_LEVEL,
    }
