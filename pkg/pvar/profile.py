"""
Dyadic decomposition bound on v_p.

Every increment of a partition either exceeds a0/2, in which case it is one
of at most nu_0 large oscillations and is at most 2 Mhat, or it falls in a
band [M_r, M_{r-1}) with r > r1 and contributes less than 2^(-rp). Hence

    v_p <= sum_{r > r1} 2^(-rp) Y_r + (2 Mhat)^p nu_0.
"""

import logging
import math

import numpy as np

from core.dyadic import r1_cutoff
from core.errors import DomainError
from core.models import MAX_LEVEL, DyadicLevel, SamplePath
from pvar.models import OscillationProfile
from pvar.oscillation import _band_count, oscillation_count, running_max_distance

logger = logging.getLogger(__name__)


def _smallest_gap(values: np.ndarray) -> float | None:
    distinct = np.unique(values)
    if distinct.size < 2:
        return None
    return float(np.min(np.diff(distinct)))


def dyadic_upper_bound(path: SamplePath, p: float, a0: float) -> OscillationProfile:
    """Evaluate the band counts, nu_0 and Mhat, and the resulting bound."""
    if not p > 0:
        raise DomainError(f"exponent p must be positive, got {p}")
    r1 = r1_cutoff(a0)
    if r1 + 1 < -MAX_LEVEL:
        # increments between the top band edge and a0/2 would go uncounted
        raise DomainError(f"a0 must leave r1 >= {-MAX_LEVEL - 1}, got a0={a0} (r1={r1})")
    profile = OscillationProfile(p=float(p), a0=float(a0), r1=r1)

    values = np.ascontiguousarray(path.values)
    gap = _smallest_gap(values)
    if len(path) < 2 or gap is None:
        return profile

    # past the deepest level, its open-floor band covers every increment below a0/2
    r = min(r1 + 1, MAX_LEVEL)
    total = 0.0
    while r <= MAX_LEVEL:
        lo_edge, hi_edge = DyadicLevel(r).band()
        if hi_edge <= gap:
            break
        # the last representable band also absorbs every smaller distance
        floor = r == MAX_LEVEL
        y = _band_count(values, lo_edge, hi_edge, open_floor=floor)
        profile.band_counts[r] = y
        if y:
            total += 2.0 ** (-r * p) * y
        r += 1

    profile.nu0 = oscillation_count(path, a0 / 2.0)
    profile.mhat = running_max_distance(path)
    total += (2.0 * profile.mhat) ** p * profile.nu0
    profile.dyadic_bound = float(total)

    logger.debug(
        "Dyadic bound %.6g over %d levels (r1=%d, nu0=%d, Mhat=%.4g)",
        total, len(profile.band_counts), r1, profile.nu0, profile.mhat,
    )
    if not math.isfinite(total):
        logger.warning("Dyadic bound overflowed for p=%s, a0=%s", p, a0)
    return profile
