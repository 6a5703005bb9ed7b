"""
Exact p-variation of a sampled path.

The supremum runs over partitions through sample points anchored at the
first and last index. For p <= 1 the finest partition is optimal; for
p > 1 an optimal partition only visits local extrema, so the dynamic
programme runs on the reduced path.
"""

import itertools
import logging

import numpy as np

from config.settings import BRUTEFORCE_MAX_LEN
from core.errors import DomainError, PathTooLongError
from core.models import SamplePath
from pvar.scans import pvar_dp

logger = logging.getLogger(__name__)


def _check_p(p: float) -> float:
    if not p > 0 or not np.isfinite(p):
        raise DomainError(f"exponent p must be positive and finite, got {p}")
    return float(p)


def _extrema_indices(values: np.ndarray) -> np.ndarray:
    n = values.size
    if n <= 2:
        return np.arange(n)
    # one representative per run of equal values
    keep = np.concatenate(([0], np.flatnonzero(np.diff(values) != 0) + 1))
    if keep.size == 1:
        return np.array([0, n - 1])
    # the last run is represented by the final sample
    keep[-1] = n - 1
    slopes = np.sign(np.diff(values[keep]))
    turning = np.flatnonzero(slopes[:-1] != slopes[1:]) + 1
    return np.concatenate(([keep[0]], keep[turning], [keep[-1]]))


def extrema_reduce(path: SamplePath) -> SamplePath:
    """Strict local extrema plus both endpoints; v_p is unchanged for p >= 1."""
    return path.subpath(_extrema_indices(path.values))


def pvar_partition(path: SamplePath, p: float) -> tuple[float, np.ndarray]:
    """v_p together with the sample indices of a maximising partition."""
    p = _check_p(p)
    n = len(path)
    if n == 1:
        return 0.0, np.zeros(1, dtype=np.int64)
    if p <= 1:
        return float(np.sum(np.abs(path.increments()) ** p)), np.arange(n, dtype=np.int64)

    kept = _extrema_indices(path.values)
    best, link = pvar_dp(np.ascontiguousarray(path.values[kept]), p)

    chain = [kept.size - 1]
    while chain[-1] > 0:
        chain.append(int(link[chain[-1]]))
    return float(best[-1]), kept[np.array(chain[::-1])]


def pvar_exact(path: SamplePath, p: float) -> float:
    """Sup over anchored sample partitions of the sum of |increment|^p."""
    return pvar_partition(path, p)[0]


def pvar_bruteforce(path: SamplePath, p: float) -> float:
    """Enumerate all 2^(n-2) anchored partitions; the oracle for short paths."""
    p = _check_p(p)
    n = len(path)
    if n > BRUTEFORCE_MAX_LEN:
        raise PathTooLongError(f"bruteforce enumeration is limited to {BRUTEFORCE_MAX_LEN} points, got {n}")
    if n == 1:
        return 0.0

    x = path.values
    weight = np.abs(x[None, :] - x[:, None]) ** p
    best = 0.0
    interior = range(1, n - 1)
    for size in range(n - 1):
        for middle in itertools.combinations(interior, size):
            points = (0, *middle, n - 1)
            total = 0.0
            for i, j in zip(points, points[1:]):
                total += weight[i, j]
            if total > best:
                best = total
    return float(best)
