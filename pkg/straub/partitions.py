"""
Integer partitions, hook lengths, core predicates and the beta-set bijection.

This is the slow, trusted oracle: simultaneous cores are found by direct
search over part sequences and checked cell by cell through hook lengths.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import factorial, gcd
from typing import FrozenSet, Iterable, Iterator, List, Set, Tuple

from straub.errors import InvalidArgumentError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class Partition:
    """A weakly decreasing sequence of positive integers."""

    parts: Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        parts = tuple(self.parts)
        object.__setattr__(self, "parts", parts)
        if any(p < 1 for p in parts):
            raise InvalidArgumentError(f"parts must be positive: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise InvalidArgumentError(f"parts must be non-increasing: {parts}")

    @property
    def size(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def is_distinct(self) -> bool:
        """True when the parts are strictly decreasing."""
        return all(a > b for a, b in zip(self.parts, self.parts[1:]))

    def __str__(self) -> str:
        return "(" + ",".join(str(p) for p in self.parts) + ")"


@dataclass(frozen=True)
class BetaSet:
    """First-column hook lengths of a partition."""

    labels: FrozenSet[int] = frozenset()

    @property
    def size(self) -> int:
        """Size of the encoded partition: sum of labels minus k(k-1)/2."""
        k = len(self.labels)
        return sum(self.labels) - k * (k - 1) // 2


def conjugate(p: Partition) -> Partition:
    """Swap rows and columns of the Ferrers diagram."""
    if not p.parts:
        return Partition()
    return Partition(tuple(sum(1 for part in p.parts if part >= j) for j in range(1, p.parts[0] + 1)))


def hook_lengths(p: Partition) -> List[int]:
    """
    Hook lengths of every cell, row by row.

    Args:
        p: Partition

    Returns:
        List with lambda_i - i + lambda'_j - j + 1 for each cell (i, j)
    """
    conj = conjugate(p).parts
    return [
        part - i + conj[j - 1] - j + 1
        for i, part in enumerate(p.parts, start=1)
        for j in range(1, part + 1)
    ]


def is_core(p: Partition, s: int) -> bool:
    """True iff no hook length of p equals s."""
    if s < 1:
        raise InvalidArgumentError(f"s must be positive, got {s}")
    return s not in hook_lengths(p)


def _require_coprime(s: int, t: int) -> None:
    if s < 1 or t < 1:
        raise InvalidArgumentError(f"s and t must be positive, got ({s}, {t})")
    if gcd(s, t) != 1:
        raise InvalidArgumentError(f"s and t must be coprime, got ({s}, {t})")


def _top_row_hooks(top: int, below_conj: Tuple[int, ...]) -> Iterator[int]:
    # a new first row only changes hooks in that row; rows below keep theirs
    for j in range(1, top + 1):
        leg = below_conj[j - 1] if j <= len(below_conj) else 0
        yield top - j + leg + 1


def _grow_cores(s: int, t: int, distinct: bool) -> Iterator[Partition]:
    """
    Depth-first search that stacks new first rows on top of known cores.

    Hooks of the lower rows do not depend on the rows above them, so every
    suffix of a core is itself a core and the search never leaves the set.
    """
    bound = s * t
    stack: List[Tuple[int, ...]] = [()]
    while stack:
        parts = stack.pop()
        yield Partition(parts)
        conj = conjugate(Partition(parts)).parts
        lowest = parts[0] if parts else 1
        if distinct and parts:
            lowest += 1
        for top in range(lowest, bound):
            hooks = set(_top_row_hooks(top, conj))
            if s not in hooks and t not in hooks:
                stack.append((top,) + parts)


def enumerate_core_distinct(s: int, t: int) -> Set[Partition]:
    """
    All (s,t)-core partitions with distinct parts, by exhaustive search.

    Args:
        s: first forbidden hook length
        t: second forbidden hook length, coprime to s

    Returns:
        Set of partitions whose parts are strictly decreasing and below s*t
    """
    _require_coprime(s, t)
    found = set(_grow_cores(s, t, distinct=True))
    logger.debug("found %d distinct-part (%d,%d)-cores", len(found), s, t)
    return found


def enumerate_cores(s: int, t: int) -> Set[Partition]:
    """All (s,t)-core partitions, distinct parts or not."""
    _require_coprime(s, t)
    return set(_grow_cores(s, t, distinct=False))


def core_count(s: int, t: int) -> int:
    """Closed count (s+t-1)!/(s! t!) of all (s,t)-cores."""
    _require_coprime(s, t)
    return factorial(s + t - 1) // (factorial(s) * factorial(t))


def core_mean_size(s: int, t: int) -> Fraction:
    """Closed mean size (s-1)(t-1)(s+t+1)/24 of all (s,t)-cores."""
    _require_coprime(s, t)
    return Fraction((s - 1) * (t - 1) * (s + t + 1), 24)


def beta_set(p: Partition) -> BetaSet:
    """First-column hook lengths lambda_i + k - i."""
    k = len(p)
    return BetaSet(frozenset(part + k - i for i, part in enumerate(p.parts, start=1)))


def partition_from_beta(labels: Iterable[int]) -> Partition:
    """
    Inverse of beta_set.

    Args:
        labels: distinct non-negative integers (a BetaSet or any iterable)

    Returns:
        Partition with parts a_i - (k - i) for the labels sorted descending
    """
    if isinstance(labels, BetaSet):
        labels = labels.labels
    values = list(labels)
    if len(set(values)) != len(values):
        raise InvalidArgumentError(f"beta-set labels must be distinct: {sorted(values)}")
    if any(v < 0 for v in values):
        raise InvalidArgumentError(f"beta-set labels must be non-negative: {sorted(values)}")
    ordered = sorted(values, reverse=True)
    k = len(ordered)
    parts = (a - (k - i) for i, a in enumerate(ordered, start=1))
    return Partition(tuple(part for part in parts if part > 0))
