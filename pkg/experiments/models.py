"""
Run records: summary rows, validation checks and the run manifest.
"""

import hashlib
import json
from dataclasses import asdict, dataclass, field
from enum import Enum

from bounds.report import BoundReport
from kernel.models import KernelFit, TailGrid

FORMAT_VERSION = "1"

SUMMARY_COLUMNS = ["mesh_n", "p", "median_vp", "p05", "p95", "classification"]
CHECK_COLUMNS = ["name", "parameters", "observed", "bound", "slack", "margin", "passed"]


class Classification(Enum):
    """Mesh-refinement behaviour of the median p-variation."""
    DIVERGING = "diverging"
    STABILIZING = "stabilizing"
    UNDETERMINED = "undetermined"


class RunKind(Enum):
    SHARPNESS = "sharpness"
    MEMBERSHIP = "membership"
    VALIDATION = "validation"


@dataclass(frozen=True)
class SummaryRow:
    """Percentiles of v_p over the ensemble at one (mesh, p) cell."""
    mesh_n: int
    p: float
    median_vp: float
    p05: float
    p95: float
    classification: Classification = Classification.UNDETERMINED

    def to_dict(self) -> dict:
        data = asdict(self)
        data["classification"] = self.classification.value
        return data

    @classmethod
    def from_dict(cls, data: dict) -> "SummaryRow":
        return cls(
            mesh_n=data["mesh_n"],
            p=data["p"],
            median_vp=data["median_vp"],
            p05=data["p05"],
            p95=data["p95"],
            classification=Classification(data.get("classification", "undetermined")),
        )


@dataclass(frozen=True)
class ValidationCheck:
    """One observed quantity against its bound; passed when observed <= bound + slack."""
    name: str
    parameters: dict
    observed: float
    bound: float
    slack: float
    passed: bool

    @property
    def margin(self) -> float:
        return self.bound + self.slack - self.observed

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "parameters": dict(self.parameters),
            "observed": self.observed,
            "bound": self.bound,
            "slack": self.slack,
            "margin": self.margin,
            "passed": self.passed,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ValidationCheck":
        return cls(
            name=data["name"],
            parameters=data.get("parameters", {}),
            observed=data["observed"],
            bound=data["bound"],
            slack=data.get("slack", 0.0),
            passed=data["passed"],
        )


@dataclass
class RunManifest:
    """Config echo and every result of one experiment run."""
    kind: RunKind
    config: dict
    summary: list[SummaryRow] = field(default_factory=list)
    classifications: dict[float, Classification] = field(default_factory=dict)
    tail_grid: TailGrid | None = None
    kernel_fit: KernelFit | None = None
    bounds: BoundReport | None = None
    checks: list[ValidationCheck] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)
    wall_clock: float = 0.0
    format_version: str = FORMAT_VERSION

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def failed_checks(self) -> list[ValidationCheck]:
        return [check for check in self.checks if not check.passed]

    def to_dict(self, include_clock: bool = True) -> dict:
        data = {
            "format_version": self.format_version,
            "kind": self.kind.value,
            "config": self.config,
            "summary": [row.to_dict() for row in self.summary],
            "classifications": [
                {"p": p, "classification": c.value} for p, c in sorted(self.classifications.items())
            ],
            "tail_grid": None if self.tail_grid is None else self.tail_grid.to_dict(),
            "kernel_fit": None if self.kernel_fit is None else self.kernel_fit.to_dict(),
            "bounds": None if self.bounds is None else self.bounds.to_dict(),
            "checks": [check.to_dict() for check in self.checks],
            "warnings": list(self.warnings),
        }
        if include_clock:
            data["wall_clock"] = self.wall_clock
        return data

    @classmethod
    def from_dict(cls, data: dict) -> "RunManifest":
        return cls(
            kind=RunKind(data["kind"]),
            config=data.get("config", {}),
            summary=[SummaryRow.from_dict(row) for row in data.get("summary", [])],
            classifications={
                entry["p"]: Classification(entry["classification"])
                for entry in data.get("classifications", [])
            },
            tail_grid=None if data.get("tail_grid") is None else TailGrid.from_dict(data["tail_grid"]),
            kernel_fit=None if data.get("kernel_fit") is None else KernelFit.from_dict(data["kernel_fit"]),
            bounds=None if data.get("bounds") is None else BoundReport.from_dict(data["bounds"]),
            checks=[ValidationCheck.from_dict(c) for c in data.get("checks", [])],
            warnings=list(data.get("warnings", [])),
            wall_clock=data.get("wall_clock", 0.0),
            format_version=data.get("format_version", FORMAT_VERSION),
        )

    def fingerprint(self) -> str:
        """SHA-256 of the manifest without wall-clock time."""
        text = json.dumps(self.to_dict(include_clock=False), sort_keys=True)
        return hashlib.sha256(text.encode("utf-8")).hexdigest()
