"""Kernel package: transition-tail estimates, class-envelope fits and the maximal inequality."""

from kernel.fit import envelope_holds, fit_envelope
from kernel.models import KernelFit, OttavianiResult, TailCell, TailGrid, Verdict
from kernel.ottaviani import ottaviani_check
from kernel.tail import (
    analytic_envelope,
    cauchy_tail,
    estimate_alpha,
    estimate_grid,
    gaussian_tail,
    read_tailgrid_csv,
    wilson_interval,
    write_tailgrid_csv,
)

__all__ = [
    "KernelFit",
    "OttavianiResult",
    "TailCell",
    "TailGrid",
    "Verdict",
    "analytic_envelope",
    "cauchy_tail",
    "envelope_holds",
    "estimate_alpha",
    "estimate_grid",
    "fit_envelope",
    "gaussian_tail",
    "ottaviani_check",
    "read_tailgrid_csv",
    "wilson_interval",
    "write_tailgrid_csv",
]
