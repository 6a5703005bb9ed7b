"""Experiments package: ensemble drivers, run manifests and report files."""

from experiments.models import (
    Classification,
    RunKind,
    RunManifest,
    SummaryRow,
    ValidationCheck,
)
from experiments.report import emit_report, load_manifest
from experiments.runs import (
    classify_medians,
    default_report_p,
    run_bound_validation,
    run_membership,
    run_sharpness,
    run_tail_chain,
)

__all__ = [
    "Classification",
    "RunKind",
    "RunManifest",
    "SummaryRow",
    "ValidationCheck",
    "classify_medians",
    "default_report_p",
    "emit_report",
    "load_manifest",
    "run_bound_validation",
    "run_membership",
    "run_sharpness",
    "run_tail_chain",
]
