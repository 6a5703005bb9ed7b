"""Pvar package: exact p-variation and the oscillation statistics of sampled paths."""

from pvar.exact import extrema_reduce, pvar_bruteforce, pvar_exact, pvar_partition
from pvar.models import OscillationProfile, StoppingRecord
from pvar.oscillation import (
    band_count,
    oscillation_count,
    running_max_distance,
    stopping_times,
    window_range,
)
from pvar.profile import dyadic_upper_bound

__all__ = [
    "OscillationProfile",
    "StoppingRecord",
    "band_count",
    "dyadic_upper_bound",
    "extrema_reduce",
    "oscillation_count",
    "pvar_bruteforce",
    "pvar_exact",
    "pvar_partition",
    "running_max_distance",
    "stopping_times",
    "window_range",
]
