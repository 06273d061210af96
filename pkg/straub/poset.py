"""
The poset P_{s,t} of non-representable integers and its order ideals.

Order ideals are enumerated by backtracking over elements in increasing
label order with bitmasks. This is the order-ideal oracle for A_n(q,t) and
S_n(q); it also covers the generalized triangle lattices behind p_poly.
"""
import logging
from collections import defaultdict
from dataclasses import dataclass, field
from math import gcd
from typing import AbstractSet, Dict, Iterator, List, Sequence, Tuple

from straub.bipoly import QPoly, SparseBiPoly, umbral
from straub.errors import InvalidArgumentError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CorePoset:
    """
    P_{s,t}: integers not of the form a*s + b*t, ordered by representable differences.

    lower[i] is the bitmask of the lower covers (x-s, x-t) of elements[i].
    """

    s: int
    t: int
    elements: Tuple[int, ...]
    lower: Tuple[int, ...] = field(repr=False)
    index: Dict[int, int] = field(repr=False, compare=False)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, x: object) -> bool:
        return x in self.index


@dataclass(frozen=True)
class OrderIdeal:
    """A downward-closed set of poset labels."""

    members: frozenset = frozenset()

    @property
    def vertex_count(self) -> int:
        return len(self.members)

    @property
    def label_sum(self) -> int:
        return sum(self.members)

    def has_consecutive(self) -> bool:
        return any(x + 1 in self.members for x in self.members)


def build_poset(s: int, t: int) -> CorePoset:
    """
    Sieve the gaps of the numerical semigroup generated by s and t.

    Args:
        s: positive generator
        t: positive generator coprime to s

    Returns:
        CorePoset with (s-1)(t-1)/2 elements
    """
    if s < 1 or t < 1 or gcd(s, t) != 1:
        raise InvalidArgumentError(f"s and t must be coprime positive integers, got ({s}, {t})")
    limit = s * t
    representable = [False] * limit
    representable[0] = True
    for x in range(1, limit):
        representable[x] = (x >= s and representable[x - s]) or (x >= t and representable[x - t])
    elements = tuple(x for x in range(limit) if not representable[x])
    index = {x: i for i, x in enumerate(elements)}
    lower = []
    for x in elements:
        mask = 0
        # gaps are closed under subtracting a generator, so the lookups never miss
        for step in (s, t):
            if x - step >= 0:
                mask |= 1 << index[x - step]
        lower.append(mask)
    poset = CorePoset(s, t, elements, tuple(lower), index)
    logger.debug("built P_{%d,%d} with %d elements", s, t, len(elements))
    return poset


def is_order_ideal(poset: CorePoset, members: AbstractSet[int]) -> bool:
    """Membership plus closure under subtracting s and t."""
    for x in members:
        if x not in poset.index:
            return False
        for step in (poset.s, poset.t):
            if x - step >= 0 and x - step not in members:
                return False
    return True


def _ideal_masks(lower: Sequence[int], previous: Sequence[int], no_consecutive: bool) -> Iterator[int]:
    """
    Backtrack over elements already sorted so that lower covers come first.

    previous[i] is the index of the element labelled one less, or -1.
    """
    size = len(lower)

    def extend(i: int, mask: int) -> Iterator[int]:
        if i == size:
            yield mask
            return
        yield from extend(i + 1, mask)
        if mask & lower[i] != lower[i]:
            return
        if no_consecutive and previous[i] >= 0 and mask >> previous[i] & 1:
            return
        yield from extend(i + 1, mask | 1 << i)

    return extend(0, 0)


def _members(mask: int, labels: Sequence[int]) -> List[int]:
    return [labels[i] for i in range(len(labels)) if mask >> i & 1]


def enumerate_ideals(poset: CorePoset, no_consecutive: bool = False) -> Iterator[OrderIdeal]:
    """Every order ideal of the poset, optionally without two consecutive labels."""
    previous = [poset.index.get(x - 1, -1) for x in poset.elements]
    for mask in _ideal_masks(poset.lower, previous, no_consecutive):
        yield OrderIdeal(frozenset(_members(mask, poset.elements)))


def enumerate_ideals_no_consec(poset: CorePoset) -> Iterator[OrderIdeal]:
    """Order ideals with no pair {a, a+1} of members."""
    return enumerate_ideals(poset, no_consecutive=True)


def _weight_enumerator(ideals: Iterator[OrderIdeal]) -> SparseBiPoly:
    acc: Dict[Tuple[int, int], int] = defaultdict(int)
    for ideal in ideals:
        acc[(ideal.label_sum, ideal.vertex_count)] += 1
    return SparseBiPoly(acc)


def a_poly_bruteforce(n: int) -> SparseBiPoly:
    """
    A_n(q,t) summed over the no-consecutive order ideals of P_{2n+1,2n+3}.

    Args:
        n: non-negative index (oracle scale, n <= 5)

    Returns:
        SparseBiPoly of q^SumOfLabels t^NumberOfVertices
    """
    if n < 0:
        raise InvalidArgumentError(f"n must be non-negative, got {n}")
    return _weight_enumerator(enumerate_ideals_no_consec(build_poset(2 * n + 1, 2 * n + 3)))


def straub_poly_bruteforce(n: int) -> QPoly:
    """Umbral image of a_poly_bruteforce(n)."""
    return umbral(a_poly_bruteforce(n))


def triangle_labels(c: int, h: int, k: int) -> Dict[Tuple[int, int], int]:
    """
    Labels of the generalized triangle lattice of side k.

    Position (x, y) with x + y <= k - 1 carries 1 + (c+h)(k-1) - (c+h)x - c*y,
    so the rank-zero row reads 1, 1+h, ..., 1+(k-1)h.
    """
    if c < 1 or h < 1:
        raise InvalidArgumentError(f"c and h must be positive, got ({c}, {h})")
    top = 1 + (c + h) * (k - 1)
    return {
        (x, y): top - (c + h) * x - c * y
        for x in range(max(k, 0))
        for y in range(k - x)
    }


def triangle_weight_bruteforce(c: int, h: int, k: int) -> SparseBiPoly:
    """
    Weight enumerator of all order ideals of the generalized triangle.

    A vertex at (x, y) lies above (x+1, y) and (x, y+1). Labels may repeat for
    small c, so the search runs over positions.
    """
    labels = triangle_labels(c, h, k)
    order = sorted(labels, key=lambda pos: (labels[pos], pos))
    position_index = {pos: i for i, pos in enumerate(order)}
    lower = []
    for x, y in order:
        mask = 0
        for below in ((x + 1, y), (x, y + 1)):
            if below in position_index:
                mask |= 1 << position_index[below]
        lower.append(mask)
    values = [labels[pos] for pos in order]
    acc: Dict[Tuple[int, int], int] = defaultdict(int)
    for mask in _ideal_masks(lower, [-1] * len(order), no_consecutive=False):
        members = _members(mask, values)
        acc[(sum(members), len(members))] += 1
    return SparseBiPoly(acc)
