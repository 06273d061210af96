"""
Command-line surface: counts, polynomials, distributions, moments, fits, limits and the full verification run.

Exit status is 0 when every check passes, 1 when a check fails and 2 on
usage, validation or I/O errors.
"""
import argparse
import logging
from collections import Counter
from fractions import Fraction
from pathlib import Path
from typing import Dict, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from config import settings
from config.settings import Command, OutputFormat
from straub.bipoly import QPoly
from straub.cache import PolyCache
from straub.engine import StraubEngine, max_size_formula
from straub.errors import CacheCorruptionError, InvalidArgumentError, StraubError, VerificationFailure
from straub.moments import (
    FitResult,
    MomentCalculator,
    RationalPoly,
    cv_limit,
    reference_polynomial,
    scaled_limit,
)
from straub.partitions import enumerate_core_distinct
from straub.poset import a_poly_bruteforce, straub_poly_bruteforce
from straub.surd import Surd
from utils.helpers import (
    format_rational,
    load_reference,
    published_straub_indices,
    published_straub_poly,
)
from utils.reporting import CheckReport, write_output

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

_NEEDS_N = (Command.POLY, Command.DIST, Command.ORACLE)


class RunConfig(BaseModel):
    """Validated command-line arguments."""

    model_config = ConfigDict(frozen=True)

    command: Command
    n: Optional[int] = Field(default=None, ge=0)
    max_n: Optional[int] = Field(default=None, ge=0)
    k: Optional[int] = Field(default=None, ge=1, le=settings.MAX_MOMENT_ORDER)
    cache: Path = settings.CACHE_DIR
    out: Optional[Path] = None
    output_format: OutputFormat = OutputFormat.PLAIN
    jobs: int = Field(default=settings.DEFAULT_JOBS, ge=1)

    @model_validator(mode="after")
    def check_required_arguments(self) -> "RunConfig":
        if self.command in _NEEDS_N and self.n is None:
            raise ValueError(f"'{self.command.value}' needs --n")
        if self.command == Command.FIT and self.k is None:
            raise ValueError("'fit' needs --k")
        return self


def _calculator(config: RunConfig) -> MomentCalculator:
    engine = StraubEngine(cache=PolyCache(config.cache))
    return MomentCalculator(engine, jobs=config.jobs)


def _poly_tree(n: int, poly: QPoly) -> Dict[str, object]:
    return {
        "n": n,
        "degree": poly.degree(),
        "terms": [{"exponent": e, "coefficient": str(c)} for e, c in poly.coeff_vector()],
    }


def _poly_tree_rational(poly: RationalPoly) -> Dict[str, str]:
    return {str(power): format_rational(c) for power, c in enumerate(poly.coefficients) if c}


# Checks shared by several commands

def _check_counts(report: CheckReport, engine: StraubEngine, max_n: int, summarize: bool = False) -> None:
    """One check per n, or a single range check naming the failing n."""
    counts = {n: engine.s_count(n) for n in range(max_n + 1)}
    if summarize:
        wrong = [n for n, s in counts.items() if s != 4 ** n]
        report.check(f"count n=0..{max_n}", not wrong, f"wrong at n={wrong}" if wrong else "s(n) = 4^n")
        return
    for n, s in counts.items():
        report.check(f"count n={n}", s == 4 ** n, f"s={s}")
    report.tree["counts"] = {str(n): str(s) for n, s in counts.items()}


def _check_straub(report: CheckReport, n: int, poly: QPoly) -> None:
    total = poly(1)
    report.check(f"S_{n}(1) n={n}", total == 4 ** n, f"{total}")
    expected = max_size_formula(n)
    report.check(f"max size n={n}", poly.degree() == expected, f"degree {poly.degree()}, expected {expected}")


def _check_published(report: CheckReport, polys: Dict[int, QPoly]) -> None:
    for n in published_straub_indices():
        published = QPoly(published_straub_poly(n))
        report.check(f"published S_{n}", polys[n] == published, f"{len(published)} terms")


def _check_oracle(report: CheckReport, n: int, poly: QPoly, engine: StraubEngine) -> None:
    ideals = straub_poly_bruteforce(n)
    report.check(f"oracle ideals n={n}", poly == ideals, f"{len(ideals)} terms")
    report.check(f"oracle A_{n} n={n}", engine.a_poly(n) == a_poly_bruteforce(n))
    sizes = Counter(p.size for p in enumerate_core_distinct(2 * n + 1, 2 * n + 3))
    report.check(f"oracle partitions n={n}", dict(poly.coeff_vector()) == dict(sizes), f"{sum(sizes.values())} cores")


def _check_fit(report: CheckReport, k: int, result: FitResult) -> None:
    for n, ok in result.verdicts:
        report.check(f"fit k={k} held-out n={n}", ok)
    published = reference_polynomial(k)
    report.check(f"fit k={k} matches published", result.polynomial == published, f"degree {result.polynomial.degree}")


def _published_limit(key: str) -> Tuple[Surd, str]:
    entry = load_reference()["limits"][key]
    return Surd.sqrt(int(entry["radicand"])) * Fraction(entry["coefficient"]), entry["decimal"]


def _check_limit(report: CheckReport, key: str, value: Surd, source: str) -> None:
    expected, decimal = _published_limit(key)
    places = len(decimal.split(".")[1])
    shown = value.decimal(places)
    name = "cv" if key == "cv" else f"scaled k={key}"
    report.lines.append(f"{name} = {value} ~ {shown} [{source}]")
    report.tree.setdefault("limits", {})[key] = {
        "r": format_rational(value.r),
        "d": value.d,
        "square": format_rational(value.square()),
        "source": source,
    }
    report.check(f"limit {name}", value == expected, str(expected))
    report.check(f"limit {name} decimal", shown == decimal, shown)


def _limits(report: CheckReport, polys: Dict[int, RationalPoly], sources: Dict[int, str]) -> None:
    """cv and every scaled limit whose polynomials are at hand."""
    if 1 in polys and 2 in polys:
        cv = cv_limit(polys[1], polys[2])
        _check_limit(report, "cv", cv, sources[2] if sources[1] == sources[2] else "mixed")
        report.check("limit cv square", cv.square() == Fraction(load_reference()["limits"]["cv"]["square"]))
    for k in range(3, settings.MAX_MOMENT_ORDER + 1):
        if k in polys and 2 in polys:
            source = sources[k] if sources[k] == sources[2] else "mixed"
            _check_limit(report, str(k), scaled_limit(k, polys), source)


# Commands

def cmd_count(config: RunConfig) -> CheckReport:
    """s(n) against 4^n for n = 0..max_n through the integer recurrences."""
    max_n = 12 if config.max_n is None else config.max_n
    report = CheckReport("count")
    _check_counts(report, StraubEngine(), max_n)
    return report


def cmd_poly(config: RunConfig) -> CheckReport:
    """S_n in the straub-poly v1 text format."""
    n = config.n
    poly = _calculator(config).straub(n)
    report = CheckReport("poly", show_checks=False)
    report.lines.extend(poly.dumps(n).splitlines())
    report.tree.update(_poly_tree(n, poly))
    _check_straub(report, n, poly)
    if n in published_straub_indices():
        report.check(f"published S_{n}", poly == QPoly(published_straub_poly(n)))
    return report


def cmd_dist(config: RunConfig) -> CheckReport:
    """(size, multiplicity) table of S_n."""
    n = config.n
    calculator = _calculator(config)
    pairs = calculator.distribution(n)
    report = CheckReport("dist", show_checks=False)
    report.lines.extend(f"{size} {count}" for size, count in pairs)
    report.tree.update({
        "n": n,
        "distribution": [{"size": size, "multiplicity": str(count)} for size, count in pairs],
    })
    report.check(f"total n={n}", sum(c for _, c in pairs) == 4 ** n)
    return report


def cmd_moments(config: RunConfig) -> CheckReport:
    """Mean and central moments for n = 0..max_n, or only order k when given."""
    max_n = 4 if config.max_n is None else config.max_n
    max_order = config.k or settings.MAX_MOMENT_ORDER
    calculator = _calculator(config)
    calculator.prefetch(max_n)
    spot = load_reference()["spot_checks"]
    report = CheckReport("moments")
    reports = []
    for n in range(max_n + 1):
        moment_report = calculator.report(n, max_order=max_order)
        reports.append(moment_report.to_tree())
        report.lines.extend(moment_report.to_records())
        report.check(f"count n={n}", moment_report.count == 4 ** n)
        report.check(f"mu1 n={n}", calculator.central_moment(n, 1) == 0)
        if str(n) in spot["mean"]:
            report.check(f"mean n={n}", moment_report.mean == Fraction(spot["mean"][str(n)]))
        if str(n) in spot["variance"] and 2 in moment_report.central:
            report.check(f"variance n={n}", moment_report.central[2] == Fraction(spot["variance"][str(n)]))
    report.tree["reports"] = reports
    return report


def cmd_fit(config: RunConfig) -> CheckReport:
    """Fit the order-k moment at degree 3k and compare with the published polynomial."""
    k = config.k
    max_n = 3 * k + 2 if config.max_n is None else config.max_n
    result = _calculator(config).moment_polynomial(k, max_n, strict=False)
    report = CheckReport("fit")
    report.lines.append(f"order {k}: {result.polynomial}")
    report.lines.append("nodes n=" + ",".join(str(n) for n in result.nodes))
    report.tree.update({
        "k": k,
        "degree": result.polynomial.degree,
        "coefficients": _poly_tree_rational(result.polynomial),
        "held_out": {str(n): "PASS" if ok else "FAIL" for n, ok in result.verdicts},
    })
    _check_fit(report, k, result)
    return report


def cmd_limits(config: RunConfig) -> CheckReport:
    """
    Coefficient of variation and scaled limits for k = 3..7.

    Orders with 3k <= max_n are fitted from computed S_n; the rest use the
    published polynomials. Every value carries its source.
    """
    max_n = 0 if config.max_n is None else config.max_n
    report = CheckReport("limits")
    polys: Dict[int, RationalPoly] = {}
    sources: Dict[int, str] = {}
    calculator = _calculator(config) if max_n >= 3 else None
    if calculator is not None:
        calculator.prefetch(max_n)
    for k in range(1, settings.MAX_MOMENT_ORDER + 1):
        if calculator is not None and 3 * k <= max_n:
            polys[k] = calculator.moment_polynomial(k, max_n).polynomial
            sources[k] = "fitted"
        else:
            polys[k] = reference_polynomial(k)
            sources[k] = "published"
    _limits(report, polys, sources)
    return report


def cmd_oracle(config: RunConfig) -> CheckReport:
    """Recurrence S_n against ideal enumeration and against direct partition search."""
    n = config.n
    calculator = _calculator(config)
    report = CheckReport("oracle")
    report.tree["n"] = n
    _check_oracle(report, n, calculator.straub(n), calculator.engine)
    return report


def cmd_verify(config: RunConfig) -> CheckReport:
    """
    Full run, in order: counts, max sizes, published S_1..S_4, oracles,
    moment fits for k <= min(7, max_n // 3), then every reachable limit.
    """
    max_n = settings.VERIFY_MAX_N if config.max_n is None else config.max_n
    calculator = _calculator(config)
    report = CheckReport("verify")

    _check_counts(report, StraubEngine(), max(settings.COUNT_MAX_N, max_n), summarize=True)

    calculator.prefetch(max(max_n, max(published_straub_indices())))
    polys = {n: calculator.straub(n) for n in range(max_n + 1)}
    for n, poly in polys.items():
        _check_straub(report, n, poly)
    _check_published(report, {n: calculator.straub(n) for n in published_straub_indices()})

    for n in range(min(settings.ORACLE_MAX_N, max_n) + 1):
        _check_oracle(report, n, polys[n], calculator.engine)

    fitted: Dict[int, RationalPoly] = {}
    for k in range(1, min(settings.MAX_MOMENT_ORDER, max_n // 3) + 1):
        result = calculator.moment_polynomial(k, max_n, strict=False)
        report.lines.append(f"order {k}: {result.polynomial}")
        _check_fit(report, k, result)
        fitted[k] = result.polynomial
    _limits(report, fitted, {k: "fitted" for k in fitted})
    return report


_COMMANDS = {
    Command.COUNT: cmd_count,
    Command.POLY: cmd_poly,
    Command.DIST: cmd_dist,
    Command.MOMENTS: cmd_moments,
    Command.FIT: cmd_fit,
    Command.LIMITS: cmd_limits,
    Command.ORACLE: cmd_oracle,
    Command.VERIFY: cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, help="index n of S_n")
    common.add_argument("--max-n", dest="max_n", type=int, help="largest n to compute")
    common.add_argument("--k", type=int, help=f"moment order 1..{settings.MAX_MOMENT_ORDER}")
    common.add_argument(
        "--cache", type=Path, default=settings.CACHE_DIR,
        help="cache directory for computed S_n (env STRAUB_CACHE_DIR)",
    )
    common.add_argument("--out", type=Path, help="write output to this file instead of stdout")
    common.add_argument(
        "--format", dest="output_format", default=OutputFormat.PLAIN.value,
        choices=[f.value for f in OutputFormat], help="plain text or machine-readable tree",
    )
    common.add_argument("--jobs", type=int, default=settings.DEFAULT_JOBS, help="worker processes")
    common.add_argument("--log-level", default=settings.LOG_LEVEL, help="logging level")

    parser = argparse.ArgumentParser(
        prog="straub",
        description="Straub polynomials, moments and limits of (2n+1,2n+3)-cores with distinct parts.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command, handler in _COMMANDS.items():
        summary = (handler.__doc__ or command.value).strip().splitlines()[0]
        subparsers.add_parser(command.value, parents=[common], help=summary, description=summary)
    return parser


def parse_config(argv: Optional[Sequence[str]] = None) -> Tuple[RunConfig, str]:
    """
    Raises:
        SystemExit: on argparse usage errors (status 2)
        ValidationError: on out-of-range or missing arguments
    """
    args = build_parser().parse_args(argv)
    values = {key: value for key, value in vars(args).items() if key != "log_level"}
    return RunConfig(**values), args.log_level


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        config, log_level = parse_config(argv)
    except ValidationError as exc:
        for error in exc.errors():
            logger.error("invalid argument %s: %s", ".".join(str(p) for p in error["loc"]) or "-", error["msg"])
        return EXIT_USAGE
    settings.configure_logging(log_level.upper())

    try:
        report = _COMMANDS[config.command](config)
        write_output(report.render(config.output_format), config.out)
        report.raise_for_failures()
    except VerificationFailure as exc:
        logger.error("%s", exc)
        return EXIT_FAILED
    except (InvalidArgumentError, CacheCorruptionError, OSError) as exc:
        logger.error("%s", exc)
        return EXIT_USAGE
    except StraubError as exc:
        logger.error("%s", exc)
        return EXIT_FAILED
    return EXIT_OK
