"""
Exact moments of the size distribution, polynomial fits in n, and scaled limits.

The k-th raw moment of S_n is (q d/dq)^k S_n at q = 1 over S_n(1), which is
simply sum m^k c_m / 4^n over the coefficient list.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, lcm
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from config import settings
from straub.bipoly import QPoly
from straub.engine import StraubEngine, compute_straub_polys
from straub.errors import DegreeMismatchError, HeldOutMismatchError, InvalidArgumentError
from straub.surd import Surd
from utils.helpers import format_rational, published_moment_coefficients

logger = logging.getLogger(__name__)


class RationalPoly:
    """Polynomial in n with Fraction coefficients; coefficients[i] multiplies n^i."""

    __slots__ = ("coefficients",)

    def __init__(self, coefficients: Iterable = ()):
        coeffs = [Fraction(c) for c in coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.coefficients: Tuple[Fraction, ...] = tuple(coeffs)

    @classmethod
    def from_terms(cls, terms: Mapping[int, Fraction]) -> "RationalPoly":
        if not terms:
            return cls()
        coeffs = [Fraction(0)] * (max(terms) + 1)
        for power, c in terms.items():
            coeffs[power] += Fraction(c)
        return cls(coeffs)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def leading(self) -> Fraction:
        return self.coefficients[-1] if self.coefficients else Fraction(0)

    def __call__(self, n) -> Fraction:
        value = Fraction(0)
        for c in reversed(self.coefficients):
            value = value * n + c
        return value

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RationalPoly):
            return NotImplemented
        return self.coefficients == other.coefficients

    def __hash__(self) -> int:
        return hash(self.coefficients)

    def __add__(self, other: "RationalPoly") -> "RationalPoly":
        size = max(len(self.coefficients), len(other.coefficients))
        a = self.coefficients + (Fraction(0),) * (size - len(self.coefficients))
        b = other.coefficients + (Fraction(0),) * (size - len(other.coefficients))
        return RationalPoly(x + y for x, y in zip(a, b))

    def __mul__(self, other: "RationalPoly") -> "RationalPoly":
        if not self.coefficients or not other.coefficients:
            return RationalPoly()
        out = [Fraction(0)] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            for j, b in enumerate(other.coefficients):
                out[i + j] += a * b
        return RationalPoly(out)

    def common_denominator(self) -> int:
        return lcm(*(c.denominator for c in self.coefficients))

    def __str__(self) -> str:
        if not self.coefficients:
            return "0"
        denominator = self.common_denominator()
        terms = []
        for power in range(self.degree, -1, -1):
            c = self.coefficients[power] * denominator
            if c == 0:
                continue
            monomial = "" if power == 0 else ("n" if power == 1 else f"n^{power}")
            magnitude = abs(c.numerator)
            body = str(magnitude) if not monomial else (monomial if magnitude == 1 else f"{magnitude}*{monomial}")
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        text = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        text += "".join(f" {sign} {body}" for sign, body in terms[1:])
        return text if denominator == 1 else f"({text})/{denominator}"

    def __repr__(self) -> str:
        return f"RationalPoly({self})"


@dataclass
class FitResult:
    """Interpolant plus pass/fail of every held-out point."""

    polynomial: RationalPoly
    nodes: List[int]
    verdicts: List[Tuple[int, bool]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(ok for _, ok in self.verdicts)


@dataclass
class MomentReport:
    """Mean and central moments 2..7 of the size distribution at one n."""

    n: int
    count: int
    mean: Fraction
    central: Dict[int, Fraction]
    scaled: Dict[int, float] = field(default_factory=dict)

    def to_records(self) -> List[str]:
        """key=value lines; the alphak values are floats for display only."""
        lines = [f"n={self.n}", f"count={self.count}", f"mean={format_rational(self.mean)}"]
        lines.extend(f"mu{k}={format_rational(v)}" for k, v in sorted(self.central.items()))
        lines.extend(f"alpha{k}={v:.10g}" for k, v in sorted(self.scaled.items()))
        return lines

    def to_tree(self) -> Dict[str, object]:
        """Nested mapping with rationals as strings and no floating point."""
        return {
            "n": self.n,
            "count": str(self.count),
            "mean": format_rational(self.mean),
            "central_moments": {str(k): format_rational(v) for k, v in sorted(self.central.items())},
        }


def distribution(poly: QPoly) -> List[Tuple[int, int]]:
    """
    (size, multiplicity) pairs of a size generating function.

    Raises:
        InvalidArgumentError: for a negative coefficient
    """
    pairs = poly.coeff_vector()
    negative = [(e, c) for e, c in pairs if c < 0]
    if negative:
        raise InvalidArgumentError(f"negative multiplicities in distribution: {negative[:3]}")
    return pairs


def _power_sums(poly: QPoly, k: int) -> List[int]:
    sums = [0] * (k + 1)
    for m, c in distribution(poly):
        term = c
        for j in range(k + 1):
            sums[j] += term
            term *= m
    return sums


def raw_moment_of(poly: QPoly, k: int) -> Fraction:
    sums = _power_sums(poly, k)
    return Fraction(sums[k], sums[0])


def mean_of(poly: QPoly) -> Fraction:
    return raw_moment_of(poly, 1)


def central_moment_of(poly: QPoly, k: int) -> Fraction:
    """sum (m - mu)^k c_m / S(1), expanded through the power sums."""
    if k < 0:
        raise InvalidArgumentError(f"moment order must be non-negative, got {k}")
    sums = _power_sums(poly, k)
    total = sums[0]
    mu = Fraction(sums[1], total) if k >= 1 else Fraction(0)
    value = sum(comb(k, j) * (-mu) ** (k - j) * sums[j] for j in range(k + 1))
    return Fraction(value) / total


def _check_order(k: int, low: int = 1) -> None:
    if not low <= k <= settings.MAX_MOMENT_ORDER:
        raise InvalidArgumentError(f"moment order must lie in {low}..{settings.MAX_MOMENT_ORDER}, got {k}")


def fit_polynomial(points: Sequence[Tuple[int, Fraction]], degree: int, strict: bool = True) -> FitResult:
    """
    Interpolate through the d+1 smallest n and test every other point.

    Args:
        points: (n, value) pairs with distinct n
        degree: target degree d
        strict: raise on a held-out mismatch instead of only reporting it

    Returns:
        FitResult with the Newton interpolant expanded to the monomial basis

    Raises:
        InvalidArgumentError: fewer than d+1 points or repeated n
        HeldOutMismatchError: a held-out point disagrees (strict mode)
    """
    ordered = sorted((int(n), Fraction(v)) for n, v in points)
    xs = [n for n, _ in ordered]
    if len(set(xs)) != len(xs):
        raise InvalidArgumentError(f"interpolation nodes must be distinct: {xs}")
    if degree < 0 or len(ordered) < degree + 1:
        raise InvalidArgumentError(f"degree {degree} needs {degree + 1} points, got {len(ordered)}")
    nodes = ordered[:degree + 1]
    # divided differences, then Horner expansion of the Newton form
    table = [v for _, v in nodes]
    diffs = [table[0]]
    for level in range(1, degree + 1):
        table = [
            (table[i + 1] - table[i]) / (nodes[i + level][0] - nodes[i][0])
            for i in range(len(table) - 1)
        ]
        diffs.append(table[0])
    poly = RationalPoly([diffs[-1]])
    for level in range(degree - 1, -1, -1):
        poly = poly * RationalPoly([-nodes[level][0], 1]) + RationalPoly([diffs[level]])
    verdicts = [(n, poly(n) == v) for n, v in ordered[degree + 1:]]
    result = FitResult(poly, [n for n, _ in nodes], verdicts)
    if strict and not result.passed:
        raise HeldOutMismatchError(degree, verdicts)
    return result


def reference_polynomial(k: int) -> RationalPoly:
    """The published order-k moment polynomial (k = 1 is the mean)."""
    _check_order(k)
    return RationalPoly.from_terms(published_moment_coefficients(k))


def _leading(polys: Mapping[int, RationalPoly], j: int) -> Fraction:
    poly = polys[j]
    if poly.degree != 3 * j:
        raise DegreeMismatchError(f"order-{j} moment polynomial has degree {poly.degree}, expected {3 * j}")
    return poly.leading


def scaled_limit(k: int, polys: Mapping[int, RationalPoly]) -> Surd:
    """
    lim mu_k / mu_2^(k/2) from the leading coefficients L_j of the moment polynomials.

    Even k gives a rational; odd k gives (L_k / L_2^((k+1)/2)) * sqrt(L_2).
    """
    _check_order(k, low=2)
    l2 = _leading(polys, 2)
    if k == 2:
        return Surd(Fraction(1))
    lk = _leading(polys, k)
    if k % 2 == 0:
        return Surd(lk / l2 ** (k // 2))
    return Surd.sqrt(l2) * (lk / l2 ** ((k + 1) // 2))


def cv_limit(mean_poly: RationalPoly, variance_poly: RationalPoly) -> Surd:
    """lim sigma/mu = sqrt(L_2)/L_1; zero when the variance vanishes identically."""
    if not variance_poly.coefficients:
        return Surd(Fraction(0))
    polys = {1: mean_poly, 2: variance_poly}
    return Surd.sqrt(_leading(polys, 2)) / _leading(polys, 1)


class MomentCalculator:
    """Moments of the size of (2n+1,2n+3)-cores with distinct parts, from S_n."""

    def __init__(self, engine: Optional[StraubEngine] = None, jobs: int = 1):
        self.engine = engine or StraubEngine()
        self.jobs = jobs
        self._polys: Dict[int, QPoly] = {}

    def straub(self, n: int) -> QPoly:
        if n not in self._polys:
            self._polys[n] = self.engine.straub_poly(n)
        return self._polys[n]

    def prefetch(self, max_n: int) -> None:
        """Compute S_0..S_max_n up front, in parallel when jobs > 1."""
        missing = [n for n in range(max_n + 1) if n not in self._polys]
        self._polys.update(compute_straub_polys(missing, self.engine, self.jobs))

    def distribution(self, n: int) -> List[Tuple[int, int]]:
        return distribution(self.straub(n))

    def mean(self, n: int) -> Fraction:
        return mean_of(self.straub(n))

    def raw_moment(self, n: int, k: int) -> Fraction:
        return raw_moment_of(self.straub(n), k)

    def central_moment(self, n: int, k: int) -> Fraction:
        return central_moment_of(self.straub(n), k)

    def scaled_moment(self, n: int, k: int) -> float:
        """mu_k / sigma^k as a float, for display only."""
        variance = self.central_moment(n, 2)
        if variance == 0:
            return 0.0
        return float(self.central_moment(n, k)) / float(variance) ** (k / 2)

    def moment_value(self, n: int, k: int) -> Fraction:
        """Mean for k = 1, central moment of order k otherwise."""
        return self.mean(n) if k == 1 else self.central_moment(n, k)

    def report(self, n: int, max_order: int = settings.MAX_MOMENT_ORDER) -> MomentReport:
        poly = self.straub(n)
        central = {k: central_moment_of(poly, k) for k in range(2, max_order + 1)}
        scaled: Dict[int, float] = {}
        if central.get(2):
            sigma = float(central[2]) ** 0.5
            scaled = {k: float(v) / sigma ** k for k, v in central.items() if k >= 3}
        return MomentReport(n, poly(1), mean_of(poly), central, scaled)

    def moment_polynomial(self, k: int, max_n: int, strict: bool = True) -> FitResult:
        """
        Fit the order-k moment sequence n = 0..max_n at degree 3k.

        Raises:
            InvalidArgumentError: max_n < 3k
            HeldOutMismatchError: a held-out n disagrees (strict mode)
        """
        _check_order(k)
        if max_n < 3 * k:
            raise InvalidArgumentError(f"order {k} needs S_n for n <= {3 * k}, got max_n={max_n}")
        self.prefetch(max_n)
        points = [(n, self.moment_value(n, k)) for n in range(max_n + 1)]
        result = fit_polynomial(points, 3 * k, strict=strict)
        logger.info(
            "order-%d moment fit: %d nodes, %d held out, %s",
            k, len(result.nodes), len(result.verdicts), "PASS" if result.passed else "FAIL",
        )
        return result
