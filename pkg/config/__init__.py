"""
Configuration module for the Straub polynomial engine.
"""
from config.settings import (
    CACHE_DIR,
    COUNT_MAX_N,
    DATA_DIR,
    DEFAULT_JOBS,
    KRONECKER_THRESHOLD,
    ORACLE_MAX_N,
    REFERENCE_FILE,
    REPORTS_DIR,
    VERIFY_MAX_N,
    Command,
    OutputFormat,
    configure_logging,
    get_env_config,
)

__all__ = [
    'CACHE_DIR',
    'COUNT_MAX_N',
    'DATA_DIR',
    'DEFAULT_JOBS',
    'KRONECKER_THRESHOLD',
    'ORACLE_MAX_N',
    'REFERENCE_FILE',
    'REPORTS_DIR',
    'VERIFY_MAX_N',
    'Command',
    'OutputFormat',
    'configure_logging',
    'get_env_config',
]
