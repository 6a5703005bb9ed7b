"""
Lower incomplete gamma function gamma(a, x) = int_0^x u^(a-1) e^(-u) du on
the window 0 <= x <= 3, from its alternating power series, and the
closed-form facts about it used by the duration bounds.
"""

import math

from core.errors import DomainError

X_MAX = 3.0
SERIES_RTOL = 1e-16
MAX_TERMS = 200

# upper end of the e^-1 + a gamma(a, 1) window for a >= 1
UNIT_GAP_CAP = 7.0 / 24.0


def _alternating_sum(x: float, shift: float) -> float:
    # sum_k (-x)^k / (k! (k + shift)) until the next term is negligible
    coeff = 1.0
    total = 1.0 / shift
    for k in range(1, MAX_TERMS):
        coeff *= -x / k
        term = coeff / (k + shift)
        total += term
        if abs(term) < SERIES_RTOL * abs(total):
            break
    return total


def lower_incomplete_gamma(a: float, x: float) -> float:
    """gamma(a, x) = sum_k (-1)^k x^(k+a) / (k! (k+a)), for a > 0 and 0 <= x <= 3."""
    if not a > 0:
        raise DomainError(f"incomplete gamma needs a > 0, got {a}")
    if not 0.0 <= x <= X_MAX:
        raise DomainError(f"incomplete gamma series is evaluated on [0, {X_MAX}], got x={x}")
    if x == 0.0:
        return 0.0
    return x ** a * _alternating_sum(x, a)


def gamma_series_upper(a: float, x: float) -> float:
    """Three-term truncation x^a/a (1 - a x/(a+1) + a x^2/(2(a+2))), an upper bound on gamma(a, x)."""
    if not a > 0:
        raise DomainError(f"incomplete gamma needs a > 0, got {a}")
    limit = 3.0 * (3.0 + a) / (2.0 + a)
    if not 0.0 <= x < limit:
        raise DomainError(f"three-term bound holds for 0 <= x < {limit:.6g}, got x={x}")
    return x ** a / a * (1.0 - a / (a + 1.0) * x + a / (2.0 * (a + 2.0)) * x * x)


def unit_gamma_gap(a: float) -> float:
    """a gamma(a, 1) - 1/e, which lies in (0, 7/24) for a >= 1."""
    if not a >= 1:
        raise DomainError(f"gap is defined here for a >= 1, got {a}")
    return a * lower_incomplete_gamma(a, 1.0) - math.exp(-1.0)


def unit_gamma_gap_series(a: float) -> float:
    """The same gap as sum_k (-1)^k / (k! (k + a + 1)), i.e. gamma(a + 1, 1)."""
    if not a >= 1:
        raise DomainError(f"gap is defined here for a >= 1, got {a}")
    return _alternating_sum(1.0, a + 1.0)


def unit_gamma_gap_window(a: float) -> tuple[float, float]:
    """Two- and three-term partial sums bracketing the gap."""
    if not a >= 1:
        raise DomainError(f"gap is defined here for a >= 1, got {a}")
    low = 1.0 / ((1.0 + a) * (2.0 + a))
    high = 1.0 / ((a + 1.0) * (a + 2.0)) + 1.0 / (2.0 * (a + 3.0))
    return low, high
