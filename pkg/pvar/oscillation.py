"""
Oscillation statistics of a sampled path: window ranges, the level-r
stopping times, oscillation counts nu_b and dyadic band counts Y_r.

Both counts are maxima over chains of index pairs s_1 < e_1 <= s_2 < e_2 <= ...
For such chains the earliest-endpoint greedy is optimal (any optimal chain
can be rewritten to end its first pair no later than the greedy one), so the
scans below return the exact maxima.
"""

import logging

import numpy as np

from core.errors import DomainError
from core.models import DyadicLevel, SamplePath
from pvar.models import StoppingRecord
from pvar.scans import band_scan, oscillation_scan, stopping_scan

logger = logging.getLogger(__name__)


def _values(path: SamplePath) -> np.ndarray:
    return np.ascontiguousarray(path.values)


def window_range(path: SamplePath, i: int, j: int) -> float:
    """R(t_i, t_j) = max - min of the values on samples i..j."""
    n = len(path)
    if not 0 <= i <= j < n:
        raise DomainError(f"window [{i}, {j}] is outside a path of length {n}")
    return float(np.ptp(path.values[i:j + 1]))


def running_max_distance(path: SamplePath) -> float:
    """max_t |x_t - x_0|."""
    return float(np.max(np.abs(path.values - path.values[0])))


def stopping_times(path: SamplePath, r: int, max_times: int | None = None) -> StoppingRecord:
    """Scan for tau_l = first t >= tau_{l-1} with R(tau_{l-1}, t) > M_r.

    With max_times set the scan stops after that many exceedances and the
    record is marked as not terminated.
    """
    level = DyadicLevel(r)
    if max_times is not None and max_times < 0:
        raise DomainError(f"max_times must be nonnegative, got {max_times}")
    cap = -1 if max_times is None else int(max_times)
    indices, terminated = stopping_scan(_values(path), level.size, cap)
    return StoppingRecord(
        r=level.r,
        times=tuple(float(t) for t in path.times[indices]),
        indices=tuple(int(i) for i in indices),
        terminated=bool(terminated),
    )


def oscillation_count(path: SamplePath, b: float) -> int:
    """nu_b: the most chained pairs with |x_e - x_s| > b."""
    if not b > 0:
        raise DomainError(f"oscillation size b must be positive, got {b}")
    if len(path) < 2:
        return 0
    return int(oscillation_scan(_values(path), float(b)))


def _band_count(values: np.ndarray, lo_edge: float, hi_edge: float, open_floor: bool = False) -> int:
    if values.size < 2:
        return 0
    spread = float(values.max() - values.min())
    if not open_floor and spread < lo_edge:
        return 0
    return int(band_scan(values, lo_edge, hi_edge, open_floor))


def band_count(path: SamplePath, r: int) -> int:
    """Y_r: the most chained pairs whose distance lies in [M_r, M_{r-1})."""
    lo_edge, hi_edge = DyadicLevel(r).band()
    return _band_count(_values(path), lo_edge, hi_edge)
