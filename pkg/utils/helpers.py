"""
Helper utilities: JSON files, rational formatting, published reference values.
"""
import json
import logging
import time
from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict, Iterator, Optional, Union

from config import settings

logger = logging.getLogger(__name__)


def load_json_data(file_path: Union[str, Path]) -> Dict[str, Any]:
    """
    Load data from a JSON file.

    Args:
        file_path: Path to the JSON file

    Returns:
        Dictionary with the loaded data
    """
    with open(file_path, 'r', encoding='utf-8') as f:
        return json.load(f)


def format_rational(value: Union[int, Fraction]) -> str:
    """Always num/den, also for integers."""
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


@dataclass
class Stopwatch:
    elapsed: float = 0.0


@contextmanager
def timed(label: str) -> Iterator[Stopwatch]:
    """Log the wall time of a block at DEBUG level; the stopwatch holds it afterwards."""
    watch = Stopwatch()
    started = time.perf_counter()
    try:
        yield watch
    finally:
        watch.elapsed = time.perf_counter() - started
        logger.debug("%s took %.3fs", label, watch.elapsed)


@lru_cache(maxsize=None)
def load_reference(file_path: Optional[str] = None) -> Dict[str, Any]:
    """Published polynomials and limits (data/reference_values.json)."""
    return load_json_data(file_path or settings.REFERENCE_FILE)


def published_straub_poly(n: int) -> Dict[int, int]:
    """Exponent -> coefficient of the printed S_n, for the n that were printed."""
    table = load_reference()["straub_polynomials"]
    if str(n) not in table:
        raise KeyError(f"S_{n} was not printed")
    return {int(e): int(c) for e, c in table[str(n)].items()}


def published_straub_indices() -> list:
    return sorted(int(n) for n in load_reference()["straub_polynomials"])


def published_moment_coefficients(k: int) -> Dict[int, Fraction]:
    """
    Power of n -> rational coefficient of the printed order-k moment polynomial.

    Entries are stored as numerator terms over a denominator (given directly or
    as a prime factorization), optionally times a prefactor polynomial.
    """
    entry = load_reference()["moment_polynomials"][str(k)]
    if "denominator" in entry:
        denominator = int(entry["denominator"])
    else:
        denominator = 1
        for prime, exponent in entry["denominator_factors"].items():
            denominator *= int(prime) ** int(exponent)
    numerator = {int(p): int(c) for p, c in entry["numerator"].items()}
    prefactor = {int(p): int(c) for p, c in entry.get("prefactor", {"0": 1}).items()}
    out: Dict[int, Fraction] = {}
    for p1, c1 in numerator.items():
        for p2, c2 in prefactor.items():
            out[p1 + p2] = out.get(p1 + p2, Fraction(0)) + Fraction(c1 * c2, denominator)
    return {p: c for p, c in out.items() if c}
