"""Bounds package: incomplete gamma facts and the closed-form duration, band-count and tail bounds."""

from bounds.duration import (
    compute_Tr,
    duration_tail_bound,
    expected_band_bound,
    laplace_bound_r,
    laplace_duration_bound,
    n1_threshold,
    p1_bound,
    p1_series_bound,
    tail_constant_C1,
    tau_tail_bound,
    tr_inverse_bound,
)
from bounds.gamma import (
    gamma_series_upper,
    unit_gamma_gap,
    unit_gamma_gap_series,
    unit_gamma_gap_window,
    lower_incomplete_gamma,
)
from bounds.report import (
    BoundReport,
    LevelBound,
    TauTail,
    build_bound_report,
    read_bounds_json,
    write_bounds_json,
)

__all__ = [
    "BoundReport",
    "LevelBound",
    "TauTail",
    "build_bound_report",
    "compute_Tr",
    "duration_tail_bound",
    "expected_band_bound",
    "gamma_series_upper",
    "laplace_bound_r",
    "laplace_duration_bound",
    "unit_gamma_gap",
    "unit_gamma_gap_series",
    "unit_gamma_gap_window",
    "lower_incomplete_gamma",
    "n1_threshold",
    "p1_bound",
    "p1_series_bound",
    "read_bounds_json",
    "tail_constant_C1",
    "tau_tail_bound",
    "tr_inverse_bound",
    "write_bounds_json",
]
