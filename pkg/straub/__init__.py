"""
Straub polynomials of (2n+1,2n+3)-core partitions with distinct parts.

Exact recurrences, brute-force oracles, size moments and their limits.
"""
from straub.bipoly import QPoly, SparseBiPoly
from straub.engine import StraubEngine, compute_straub_polys
from straub.errors import StraubError

__all__ = [
    'QPoly',
    'SparseBiPoly',
    'StraubEngine',
    'StraubError',
    'compute_straub_polys',
]
