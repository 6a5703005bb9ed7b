"""
The metric on the state space and dyadic-level arithmetic.
"""

import math

from core.errors import DomainError
from core.models import MAX_LEVEL, DyadicLevel


def metric(x: float, y: float) -> float:
    """Distance on the real line."""
    if not (math.isfinite(x) and math.isfinite(y)):
        raise DomainError(f"metric needs finite arguments, got {x!r}, {y!r}")
    return abs(x - y)


def dyadic_size(r: int) -> float:
    """M_r = 2^(-r-1), exact for |r| <= 60."""
    return DyadicLevel(r).size


def r1_cutoff(a0: float) -> int:
    """Largest integer r1 with r1 <= -(log2 a0 + 3).

    Computed from the binary exponent of a0, so the floor is exact:
    a0 = m * 2^e with m in [0.5, 1) puts log2 a0 in [e - 1, e), with the
    left end attained only when m is exactly one half.
    """
    if not (a0 > 0 and math.isfinite(a0)):
        raise DomainError(f"a0 must be positive and finite, got {a0!r}")
    mantissa, exponent = math.frexp(a0)
    if mantissa == 0.5:
        return -(exponent + 2)
    return -(exponent + 3)


def levels_above_cutoff(a0: float, r_max: int) -> list[int]:
    """Levels r1 < r <= r_max, clipped to the representable range."""
    r1 = r1_cutoff(a0)
    top = min(r_max, MAX_LEVEL)
    return list(range(max(r1 + 1, -MAX_LEVEL), top + 1))
