"""
Recurrence engine for the counts s(n) and the Straub polynomials S_n(q).

Two paths share one memo store:

* the integer path p(k), e(a,b), o(a,b), s(n) counts order ideals without
  consecutive labels (fast enough to reach n = 400);
* the weighted path P^{(c,h)}_k, E^{(c)}_{x,y}, O^{(c)}_{x,y}, A_n tracks
  q^SumOfLabels t^NumberOfVertices, and S_n is its umbral image.

Only canonical polynomials (plain t) are memoized; the substitutions
t -> q^m t are applied at the call site.
"""
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Tuple

from straub.bipoly import QPoly, SparseBiPoly, mono_mul, mul, subst_t_scale, umbral
from straub.errors import InvalidArgumentError
from utils.helpers import timed

logger = logging.getLogger(__name__)

PolyKey = Tuple[int, int, int]


@dataclass
class MemoStore:
    """
    Memo tables for both recurrence paths.

    Entries are never mutated once stored; concurrent writers of the same key
    store equal values, so setdefault keeps whichever lands first.
    """

    p_counts: Dict[int, int] = field(default_factory=lambda: {-1: 1, 0: 1})
    e_counts: Dict[Tuple[int, int], int] = field(default_factory=dict)
    o_counts: Dict[Tuple[int, int], int] = field(default_factory=dict)
    p_polys: Dict[PolyKey, SparseBiPoly] = field(default_factory=dict)
    e_polys: Dict[PolyKey, SparseBiPoly] = field(default_factory=dict)
    o_polys: Dict[PolyKey, SparseBiPoly] = field(default_factory=dict)

    def release(self, c: int) -> None:
        """Drop every weighted table entry with spacing c."""
        for table in (self.p_polys, self.e_polys, self.o_polys):
            for key in [key for key in table if key[0] == c]:
                del table[key]

    def sizes(self) -> Dict[str, int]:
        return {
            "p_counts": len(self.p_counts),
            "e_counts": len(self.e_counts),
            "o_counts": len(self.o_counts),
            "p_polys": len(self.p_polys),
            "e_polys": len(self.e_polys),
            "o_polys": len(self.o_polys),
        }


def max_size_formula(n: int) -> int:
    """Largest size (5n+11)n(n+1)(n+2)/24 of a (2n+1,2n+3)-core with distinct parts."""
    return (5 * n + 11) * n * (n + 1) * (n + 2) // 24


class StraubEngine:
    """Memoized evaluation of the counting and weighted recurrences."""

    def __init__(self, store: Optional[MemoStore] = None, cache=None, release_tables: bool = True):
        """
        Args:
            store: memo tables to use (a fresh store by default)
            cache: optional PolyCache consulted by straub_poly
            release_tables: drop the weighted tables of spacing 2n+1 once S_n is known
        """
        self.store = store if store is not None else MemoStore()
        self.cache = cache
        self.release_tables = release_tables
        self._warmed_to = 0

    # Integer path

    def p_count(self, k: int) -> int:
        """Catalan number C_{k+1} through p(k) = sum_{i=1}^{k+1} p(i-2) p(k-i)."""
        if k < -1:
            raise InvalidArgumentError(f"p(k) is defined for k >= -1, got {k}")
        table = self.store.p_counts
        for m in range(1, k + 1):
            if m not in table:
                table.setdefault(m, sum(table[i - 2] * table[m - i] for i in range(1, m + 2)))
        return table[k]

    def e_count(self, a: int, b: int) -> int:
        """Order ideals without consecutive labels of EO(a, b)."""
        if a <= 0 or b < 0:
            return self.p_count(b)
        key = (a, b)
        value = self.store.e_counts.get(key)
        if value is None:
            value = sum(
                self.o_count(a + 1 - i, b - i) * self.p_count(i - 2)
                for i in range(1, b + 2)
            )
            value = self.store.e_counts.setdefault(key, value)
        return value

    def o_count(self, a: int, b: int) -> int:
        """Order ideals without consecutive labels of OE(a, b)."""
        if a <= 0 or b < 0:
            return self.p_count(b)
        key = (a, b)
        value = self.store.o_counts.get(key)
        if value is None:
            value = sum(
                self.e_count(a - i, b + 1 - i) * self.p_count(i - 2)
                for i in range(1, a + 2)
            )
            value = self.store.o_counts.setdefault(key, value)
        return value

    def _warm_counts(self, n: int) -> None:
        # e(a,b) reads o(., <b); o(a,b) reads e(<a, <=b): this order makes every call a table hit
        if n <= self._warmed_to:
            return
        self.p_count(n + 1)
        for b in range(self._warmed_to + 1, n + 1):
            for a in range(1, b + 1):
                if a < b:
                    self.e_count(a, b)
                self.o_count(a, b)
        self._warmed_to = n

    def s_count(self, n: int) -> int:
        """Number of (2n+1,2n+3)-core partitions with distinct parts."""
        if n < 0:
            raise InvalidArgumentError(f"n must be non-negative, got {n}")
        self._warm_counts(n)
        return sum(self.e_count(n - i, n) for i in range(1, n + 2))

    # Weighted path

    def p_poly(self, c: int, h: int, k: int) -> SparseBiPoly:
        """
        Weight enumerator P^{(c,h)}_k of the generalized triangle of side k.

        Args:
            c: vertical label step
            h: rank-zero label step (horizontal step is c + h)
            k: side length, k >= -1

        Returns:
            SparseBiPoly in q and t
        """
        if k < -1:
            raise InvalidArgumentError(f"P_k is defined for k >= -1, got {k}")
        if k <= 0:
            return SparseBiPoly.one()
        key = (c, h, k)
        value = self.store.p_polys.get(key)
        if value is not None:
            return value
        terms = []
        for i in range(1, k + 2):
            left = subst_t_scale(self.p_poly(c, h, i - 2), c + h)
            right = subst_t_scale(self.p_poly(c, h, k - i), i * h)
            shift = (i - 1) + (i - 1) * (i - 2) * h // 2
            terms.append(mono_mul(mul(left, right), shift, i - 1))
        return self.store.p_polys.setdefault(key, SparseBiPoly.sum(terms))

    def e_poly(self, c: int, x: int, y: int) -> SparseBiPoly:
        """Weight enumerator E^{(c)}_{x,y} of EO(x, y)."""
        if x <= 0 or y < 0:
            return self.p_poly(c, 2, y)
        key = (c, x, y)
        value = self.store.e_polys.get(key)
        if value is not None:
            return value
        terms = []
        for i in range(1, y + 2):
            odd = subst_t_scale(self.o_poly(c, x - i + 1, y - i), 2 * i - 1)
            kicked = subst_t_scale(self.p_poly(c, 2, i - 2), c + 2)
            terms.append(mono_mul(mul(odd, kicked), (i - 1) ** 2, i - 1))
        return self.store.e_polys.setdefault(key, SparseBiPoly.sum(terms))

    def o_poly(self, c: int, x: int, y: int) -> SparseBiPoly:
        """Weight enumerator O^{(c)}_{x,y} of OE(x, y)."""
        if x <= 0 or y < 0:
            return subst_t_scale(self.p_poly(c, 2, y), 1)
        key = (c, x, y)
        value = self.store.o_polys.get(key)
        if value is not None:
            return value
        terms = []
        for i in range(1, x + 2):
            even = subst_t_scale(self.e_poly(c, x - i, y - i + 1), 2 * i - 1)
            kicked = subst_t_scale(self.p_poly(c, 2, i - 2), c + 2)
            terms.append(mono_mul(mul(even, kicked), (i - 1) ** 2, i - 1))
        return self.store.o_polys.setdefault(key, SparseBiPoly.sum(terms))

    def a_poly(self, n: int) -> SparseBiPoly:
        """A_n(q,t) split on the smallest unoccupied odd rank-zero label 2i-1."""
        if n < 0:
            raise InvalidArgumentError(f"n must be non-negative, got {n}")
        if n == 0:
            return SparseBiPoly.one()
        c = 2 * n + 1
        terms = [
            mono_mul(subst_t_scale(self.e_poly(c, n - i, n), 2 * i - 1), (i - 1) ** 2, i - 1)
            for i in range(1, n + 2)
        ]
        return SparseBiPoly.sum(terms)

    def straub_poly(self, n: int) -> QPoly:
        """
        S_n(q) = U(A_n(q,t)), read from the cache when one is attached.

        Raises:
            NegativeExponentError: propagated from the umbral transform
        """
        if self.cache is not None:
            cached = self.cache.load(n)
            if cached is not None:
                return cached
        with timed(f"S_{n}") as watch:
            poly = umbral(self.a_poly(n))
        if self.release_tables:
            self.store.release(2 * n + 1)
        logger.info(
            "S_%d: degree %d, %d terms, %.2fs",
            n, poly.degree(), len(poly), watch.elapsed,
        )
        if self.cache is not None:
            self.cache.store(n, poly)
        return poly

    def max_size(self, n: int) -> int:
        """Largest size of a (2n+1,2n+3)-core with distinct parts: deg S_n."""
        return self.straub_poly(n).degree()


def _straub_worker(n: int) -> Tuple[int, QPoly]:
    return n, StraubEngine().straub_poly(n)


def compute_straub_polys(ns: Iterable[int], engine: Optional[StraubEngine] = None, jobs: int = 1) -> Dict[int, QPoly]:
    """
    S_n for every requested n, in parallel when jobs > 1.

    Cached values are served by the engine; only misses go to worker
    processes, and their results are written back through the engine's cache.
    The result does not depend on jobs.
    """
    engine = engine or StraubEngine()
    wanted = sorted(set(ns))
    results: Dict[int, QPoly] = {}
    missing: List[int] = []
    for n in wanted:
        cached = engine.cache.load(n) if engine.cache is not None else None
        if cached is not None:
            results[n] = cached
        else:
            missing.append(n)
    if jobs > 1 and len(missing) > 1:
        logger.info("computing S_n for n=%s with %d workers", missing, jobs)
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for n, poly in pool.map(_straub_worker, missing):
                results[n] = poly
                if engine.cache is not None:
                    engine.cache.store(n, poly)
    else:
        for n in missing:
            results[n] = engine.straub_poly(n)
    return {n: results[n] for n in wanted}
