"""
Exception hierarchy for the Straub polynomial engine.
"""
from typing import List, Tuple


class StraubError(Exception):
    """Base class for all errors raised by this package."""


class InvalidArgumentError(StraubError, ValueError):
    """A precondition on an argument was violated."""


class NegativeExponentError(StraubError, ArithmeticError):
    """The umbral transform would produce a negative power of q."""

    def __init__(self, e_q: int, e_t: int):
        super().__init__(
            f"umbral image of q^{e_q} t^{e_t} has exponent "
            f"{e_q - e_t * (e_t - 1) // 2} < 0"
        )
        self.e_q = e_q
        self.e_t = e_t


class HeldOutMismatchError(StraubError):
    """An interpolated polynomial disagrees with a held-out data point."""

    def __init__(self, degree: int, verdicts: List[Tuple[int, bool]]):
        failed = [n for n, ok in verdicts if not ok]
        super().__init__(f"degree-{degree} fit fails at held-out n={failed}")
        self.degree = degree
        self.verdicts = verdicts


class DegreeMismatchError(StraubError):
    """A moment polynomial does not have the expected degree."""


class CacheCorruptionError(StraubError):
    """Serialized polynomial text could not be parsed or is inconsistent."""


class VerificationFailure(StraubError):
    """A named verification check failed."""

    def __init__(self, failed: List[str]):
        super().__init__("failed checks: " + ", ".join(failed))
        self.failed = failed
