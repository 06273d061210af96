"""
Pytest configuration and fixtures.
"""
from pathlib import Path
from typing import Any, Dict

import pytest

from config import settings
from straub.bipoly import QPoly
from straub.cache import PolyCache
from straub.engine import StraubEngine, compute_straub_polys
from straub.moments import MomentCalculator
from utils.helpers import load_json_data, load_reference
from utils.reporting import create_allure_environment_properties

# S_0..S_6 are cheap enough for every run; heavier n are opt-in through --max-n
FAST_MAX_N = 6


def pytest_addoption(parser):
    """Add command-line options to pytest."""
    parser.addoption(
        "--max-n",
        action="store",
        type=int,
        default=14,
        help="Largest n the slow tests may generate S_n for (default: 14)",
    )
    parser.addoption(
        "--cache-dir",
        action="store",
        default=None,
        help="Reuse a polynomial cache directory across runs (default: a fresh temporary directory)",
    )


@pytest.fixture(scope="session")
def max_n(request) -> int:
    """Get the --max-n value from the command line option."""
    return request.config.getoption("--max-n")


@pytest.fixture(scope="session")
def cache(request, tmp_path_factory) -> PolyCache:
    """Polynomial cache shared by the whole session."""
    directory = request.config.getoption("--cache-dir")
    return PolyCache(Path(directory) if directory else tmp_path_factory.mktemp("straub-cache"))


@pytest.fixture(scope="session")
def engine(cache: PolyCache) -> StraubEngine:
    """Recurrence engine backed by the session cache."""
    return StraubEngine(cache=cache)


@pytest.fixture
def fresh_engine() -> StraubEngine:
    """Engine with empty memo tables and no cache."""
    return StraubEngine()


@pytest.fixture(scope="session")
def straub_polys(engine: StraubEngine) -> Dict[int, QPoly]:
    """S_0..S_6 from the recurrences."""
    return compute_straub_polys(range(FAST_MAX_N + 1), engine)


@pytest.fixture(scope="session")
def calculator(engine: StraubEngine) -> MomentCalculator:
    return MomentCalculator(engine)


@pytest.fixture(scope="session")
def reference() -> Dict[str, Any]:
    """Published values from data/reference_values.json."""
    return load_reference()


@pytest.fixture(scope="session")
def partition_cases() -> Dict[str, Any]:
    return load_json_data(settings.TEST_DATA_DIR / "partition_cases.json")


@pytest.fixture(scope="session", autouse=True)
def setup_allure_environment(tmp_path_factory):
    """Set up Allure environment properties at the start of the test run."""
    create_allure_environment_properties(tmp_path_factory.mktemp("allure-results"))
