"""
Sparse polynomials in q and t over arbitrary-precision integers.

SparseBiPoly holds the weight enumerators q^SumOfLabels t^NumberOfVertices;
QPoly holds univariate results in q (the Straub polynomials) together with
their text serialization.
"""
import logging
import re
from collections import defaultdict
from types import MappingProxyType
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Tuple

from config import settings
from straub.errors import CacheCorruptionError, NegativeExponentError

logger = logging.getLogger(__name__)

Exponent = Tuple[int, int]

HEADER_PATTERN = re.compile(r"^# straub-poly v1 n=(\d+) terms=(\d+)$")


def _mul_naive(a: Mapping[int, int], b: Mapping[int, int]) -> Dict[int, int]:
    out: Dict[int, int] = defaultdict(int)
    for ea, ca in a.items():
        for eb, cb in b.items():
            out[ea + eb] += ca * cb
    return out


def _pack(coeffs: Mapping[int, int], low: int, length: int, width: int) -> int:
    buf = bytearray(length * width)
    for e, c in coeffs.items():
        offset = (e - low) * width
        buf[offset:offset + width] = c.to_bytes(width, "little")
    return int.from_bytes(buf, "little")


def _mul_kronecker(a: Mapping[int, int], b: Mapping[int, int]) -> Dict[int, int]:
    """
    Multiply two q-slices with non-negative coefficients through one big-integer product.

    Each slice is packed into an integer with a fixed number of bytes per
    exponent, wide enough that no coefficient of the product can carry into
    its neighbour.
    """
    low_a, high_a = min(a), max(a)
    low_b, high_b = min(b), max(b)
    bound = max(a.values()) * max(b.values()) * min(len(a), len(b))
    width = (bound.bit_length() + 7) // 8
    span = (high_a - low_a) + (high_b - low_b) + 1
    product = _pack(a, low_a, high_a - low_a + 1, width) * _pack(b, low_b, high_b - low_b + 1, width)
    raw = product.to_bytes(span * width, "little")
    base = low_a + low_b
    out: Dict[int, int] = {}
    for index in range(span):
        c = int.from_bytes(raw[index * width:(index + 1) * width], "little")
        if c:
            out[base + index] = c
    return out


def mul_slices(a: Mapping[int, int], b: Mapping[int, int], threshold: Optional[int] = None) -> Dict[int, int]:
    """
    Product of two univariate coefficient maps.

    Args:
        a: exponent -> coefficient
        b: exponent -> coefficient
        threshold: len(a)*len(b) above which packing is used (default from settings)

    Returns:
        exponent -> coefficient of the product, zero entries possibly present
    """
    if not a or not b:
        return {}
    if threshold is None:
        threshold = settings.KRONECKER_THRESHOLD
    if len(a) * len(b) > threshold and min(a.values()) > 0 and min(b.values()) > 0:
        return _mul_kronecker(a, b)
    return _mul_naive(a, b)


class QPoly:
    """Sparse univariate polynomial in q with integer coefficients."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Optional[Mapping[int, int]] = None):
        clean: Dict[int, int] = {}
        for e, c in (coeffs or {}).items():
            if e < 0:
                raise ValueError(f"negative exponent {e} in q-polynomial")
            if c:
                clean[int(e)] = int(c)
        self._coeffs = clean

    @property
    def coeffs(self) -> Mapping[int, int]:
        return MappingProxyType(self._coeffs)

    def degree(self) -> int:
        """Largest exponent; the zero polynomial has degree -1."""
        return max(self._coeffs) if self._coeffs else -1

    def coeff(self, e: int) -> int:
        return self._coeffs.get(e, 0)

    def coeff_vector(self) -> List[Tuple[int, int]]:
        return sorted(self._coeffs.items())

    def __call__(self, x):
        return sum(c * x ** e for e, c in self._coeffs.items())

    def __len__(self) -> int:
        return len(self._coeffs)

    def __iter__(self) -> Iterator[Tuple[int, int]]:
        return iter(self.coeff_vector())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QPoly):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(frozenset(self._coeffs.items()))

    def __add__(self, other: "QPoly") -> "QPoly":
        out = dict(self._coeffs)
        for e, c in other._coeffs.items():
            out[e] = out.get(e, 0) + c
        return QPoly(out)

    def __repr__(self) -> str:
        if not self._coeffs:
            return "QPoly(0)"
        terms = [f"{c}*q^{e}" if e else str(c) for e, c in sorted(self._coeffs.items(), reverse=True)]
        return "QPoly(" + " + ".join(terms) + ")"

    def dumps(self, n: int) -> str:
        """Serialize in the straub-poly v1 text format."""
        lines = [f"# straub-poly v1 n={n} terms={len(self._coeffs)}"]
        lines.extend(f"{e} {c}" for e, c in self.coeff_vector())
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str) -> Tuple[int, "QPoly"]:
        """
        Parse the straub-poly v1 text format.

        Returns:
            (n, polynomial)

        Raises:
            CacheCorruptionError: on any structural inconsistency
        """
        lines = text.split("\n")
        if not lines or lines[-1] != "":
            raise CacheCorruptionError("missing trailing newline")
        lines.pop()
        if not lines:
            raise CacheCorruptionError("empty polynomial file")
        match = HEADER_PATTERN.match(lines[0])
        if match is None:
            raise CacheCorruptionError(f"bad header: {lines[0]!r}")
        n, count = int(match.group(1)), int(match.group(2))
        body = lines[1:]
        if len(body) != count:
            raise CacheCorruptionError(f"header announces {count} terms, found {len(body)}")
        coeffs: Dict[int, int] = {}
        previous = -1
        for line in body:
            fields = line.split(" ")
            try:
                e, c = int(fields[0]), int(fields[1])
            except (ValueError, IndexError) as exc:
                raise CacheCorruptionError(f"bad term line: {line!r}") from exc
            if len(fields) != 2 or e <= previous or c == 0 or line != f"{e} {c}":
                raise CacheCorruptionError(f"non-canonical term line: {line!r}")
            coeffs[e] = c
            previous = e
        return n, cls(coeffs)


class SparseBiPoly:
    """
    Immutable sparse polynomial in q and t.

    Terms map (e_q, e_t) to a nonzero integer coefficient.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[Mapping[Exponent, int]] = None):
        clean: Dict[Exponent, int] = {}
        for (e_q, e_t), c in (terms or {}).items():
            if e_q < 0 or e_t < 0:
                raise ValueError(f"negative exponent ({e_q}, {e_t})")
            if c:
                clean[(int(e_q), int(e_t))] = int(c)
        self._terms = clean

    @classmethod
    def _wrap(cls, terms: Dict[Exponent, int]) -> "SparseBiPoly":
        # caller guarantees canonical terms
        poly = cls.__new__(cls)
        poly._terms = terms
        return poly

    @classmethod
    def zero(cls) -> "SparseBiPoly":
        return cls._wrap({})

    @classmethod
    def one(cls) -> "SparseBiPoly":
        return cls._wrap({(0, 0): 1})

    @classmethod
    def monomial(cls, e_q: int, e_t: int, c: int = 1) -> "SparseBiPoly":
        return cls({(e_q, e_t): c})

    @classmethod
    def from_qpoly(cls, poly: QPoly) -> "SparseBiPoly":
        return cls._wrap({(e, 0): c for e, c in poly.coeffs.items()})

    @classmethod
    def sum(cls, polys: Iterable["SparseBiPoly"]) -> "SparseBiPoly":
        """Add many polynomials into one accumulator."""
        acc: Dict[Exponent, int] = defaultdict(int)
        for poly in polys:
            for key, c in poly._terms.items():
                acc[key] += c
        return cls._wrap({key: c for key, c in acc.items() if c})

    @property
    def terms(self) -> Mapping[Exponent, int]:
        return MappingProxyType(self._terms)

    def slices(self) -> Dict[int, Dict[int, int]]:
        """Group terms by power of t: e_t -> {e_q: coefficient}."""
        out: Dict[int, Dict[int, int]] = defaultdict(dict)
        for (e_q, e_t), c in self._terms.items():
            out[e_t][e_q] = c
        return dict(out)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SparseBiPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: "SparseBiPoly") -> "SparseBiPoly":
        return add(self, other)

    def __neg__(self) -> "SparseBiPoly":
        return SparseBiPoly._wrap({key: -c for key, c in self._terms.items()})

    def __sub__(self, other: "SparseBiPoly") -> "SparseBiPoly":
        return add(self, -other)

    def __mul__(self, other: "SparseBiPoly") -> "SparseBiPoly":
        return mul(self, other)

    def __repr__(self) -> str:
        if not self._terms:
            return "SparseBiPoly(0)"
        parts = [f"{c}*q^{e_q}*t^{e_t}" for (e_q, e_t), c in sorted(self._terms.items())]
        return "SparseBiPoly(" + " + ".join(parts) + ")"


def add(a: SparseBiPoly, b: SparseBiPoly) -> SparseBiPoly:
    """Exact sum with zero terms removed."""
    out = dict(a._terms)
    for key, c in b._terms.items():
        total = out.get(key, 0) + c
        if total:
            out[key] = total
        else:
            out.pop(key, None)
    return SparseBiPoly._wrap(out)


def mul(a: SparseBiPoly, b: SparseBiPoly, threshold: Optional[int] = None) -> SparseBiPoly:
    """
    Exact product, computed slice by slice in t.

    Args:
        a: left factor
        b: right factor
        threshold: forwarded to mul_slices

    Returns:
        Canonical product
    """
    if not a or not b:
        return SparseBiPoly.zero()
    acc: Dict[Exponent, int] = defaultdict(int)
    b_slices = b.slices()
    for t_a, slice_a in a.slices().items():
        for t_b, slice_b in b_slices.items():
            e_t = t_a + t_b
            for e_q, c in mul_slices(slice_a, slice_b, threshold).items():
                acc[(e_q, e_t)] += c
    return SparseBiPoly._wrap({key: c for key, c in acc.items() if c})


def mono_mul(a: SparseBiPoly, e_q: int, e_t: int) -> SparseBiPoly:
    """Multiply by q^e_q t^e_t."""
    if e_q < 0 or e_t < 0:
        raise ValueError(f"negative monomial exponent ({e_q}, {e_t})")
    return SparseBiPoly._wrap({(q + e_q, t + e_t): c for (q, t), c in a._terms.items()})


def subst_t_scale(a: SparseBiPoly, m: int) -> SparseBiPoly:
    """Substitute t -> q^m t."""
    if m < 0:
        raise ValueError(f"scale exponent must be non-negative, got {m}")
    if m == 0:
        return a
    return SparseBiPoly._wrap({(e_q + m * e_t, e_t): c for (e_q, e_t), c in a._terms.items()})


def umbral(a: SparseBiPoly) -> QPoly:
    """
    Apply t^k -> q^(-k(k-1)/2) and collect the result in q.

    Raises:
        NegativeExponentError: when some term has e_q < e_t(e_t-1)/2
    """
    out: Dict[int, int] = defaultdict(int)
    for (e_q, e_t), c in a._terms.items():
        shift = e_t * (e_t - 1) // 2
        if e_q < shift:
            raise NegativeExponentError(e_q, e_t)
        out[e_q - shift] += c
    return QPoly(out)


def eval_q1_t1(a: SparseBiPoly) -> int:
    """Value at q = t = 1."""
    return sum(a._terms.values())


def degree_q(poly: QPoly) -> int:
    return poly.degree()


def coeff_vector(poly: QPoly) -> List[Tuple[int, int]]:
    """(exponent, coefficient) pairs in increasing exponent order."""
    return poly.coeff_vector()
