"""Core package: shared domain types, the metric and dyadic levels."""

from core.dyadic import dyadic_size, levels_above_cutoff, metric, r1_cutoff
from core.errors import (
    ConfigError,
    DomainError,
    LabError,
    PathTooLongError,
    PreconditionError,
    ReportError,
    VacuousBoundError,
    format_error,
)
from core.models import MAX_LEVEL, ClassEnvelope, DyadicLevel, SamplePath

__all__ = [
    "ClassEnvelope",
    "ConfigError",
    "DomainError",
    "DyadicLevel",
    "LabError",
    "MAX_LEVEL",
    "PathTooLongError",
    "PreconditionError",
    "ReportError",
    "SamplePath",
    "VacuousBoundError",
    "dyadic_size",
    "format_error",
    "levels_above_cutoff",
    "metric",
    "r1_cutoff",
]
