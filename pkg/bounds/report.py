"""
BoundReport: every closed-form bound evaluated at one envelope and horizon.
"""

import json
import logging
from dataclasses import asdict, dataclass, field
from pathlib import Path

from bounds.duration import (
    compute_Tr,
    expected_band_bound,
    laplace_bound_r,
    n1_threshold,
    p1_series_bound,
    tail_constant_C1,
    tau_tail_bound,
    tr_inverse_bound,
)
from core.dyadic import levels_above_cutoff, r1_cutoff
from core.errors import DomainError, ReportError
from core.models import ClassEnvelope

logger = logging.getLogger(__name__)

DEFAULT_LEVEL_COUNT = 8
DEFAULT_J_VALUES = (1, 2, 3)
DEFAULT_EPS = 0.05


@dataclass(frozen=True)
class LevelBound:
    r: int
    Tr: float
    laplace: float
    ey_bound: float
    tr_inverse: float | None = None


@dataclass(frozen=True)
class TauTail:
    j: int
    r: int
    bound: float


@dataclass
class BoundReport:
    """Per-level T_r, Laplace and E Y_r bounds, stopping-time tails and C1.

    With an admissible p the report also carries N1 for the target eps and
    the level-by-level tail sum at N1, which never exceeds C1 / N1.
    """
    envelope: ClassEnvelope
    T: float
    r1: int | None = None
    levels: list[LevelBound] = field(default_factory=list)
    tau_tails: list[TauTail] = field(default_factory=list)
    p: float | None = None
    C1: float | None = None
    eps: float | None = None
    N1: int | None = None
    p1_series: float | None = None

    def level(self, r: int) -> LevelBound:
        for entry in self.levels:
            if entry.r == r:
                return entry
        raise KeyError(r)

    def to_dict(self) -> dict:
        return {
            "envelope": self.envelope.to_dict(),
            "T": self.T,
            "r1": self.r1,
            "p": self.p,
            "levels": [asdict(level) for level in self.levels],
            "tau_tails": [asdict(tail) for tail in self.tau_tails],
            "C1": self.C1,
            "eps": self.eps,
            "N1": self.N1,
            "p1_series": self.p1_series,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "BoundReport":
        return cls(
            envelope=ClassEnvelope.from_dict(data["envelope"]),
            T=data["T"],
            r1=data.get("r1"),
            levels=[LevelBound(**entry) for entry in data.get("levels", [])],
            tau_tails=[TauTail(**entry) for entry in data.get("tau_tails", [])],
            p=data.get("p"),
            C1=data.get("C1"),
            eps=data.get("eps"),
            N1=data.get("N1"),
            p1_series=data.get("p1_series"),
        )


def build_bound_report(
    env: ClassEnvelope,
    T: float,
    levels=None,
    j_values=DEFAULT_J_VALUES,
    p: float | None = None,
    eps: float = DEFAULT_EPS,
) -> BoundReport:
    """Evaluate the bounds at the given levels and stopping indices.

    Levels default to the first few above the r1 cutoff. C1, N1 and the
    tail sum are filled in only when p exceeds the critical exponent.
    """
    r1 = r1_cutoff(env.a0)
    if levels is None:
        levels = levels_above_cutoff(env.a0, r1 + DEFAULT_LEVEL_COUNT)
    levels = sorted(set(int(r) for r in levels))
    j_values = sorted(set(int(j) for j in j_values))
    if not levels:
        raise DomainError("bound report needs at least one level")

    report = BoundReport(envelope=env, T=float(T), r1=r1, p=None if p is None else float(p))
    for r in levels:
        report.levels.append(
            LevelBound(
                r=r,
                Tr=compute_Tr(r, env, T),
                laplace=laplace_bound_r(r, env, T),
                ey_bound=expected_band_bound(r, env, T),
                tr_inverse=tr_inverse_bound(r, env, T),
            )
        )
    for j in j_values:
        for r in levels:
            report.tau_tails.append(TauTail(j=j, r=r, bound=tau_tail_bound(j, r, env, T)))

    if p is not None:
        if env.admits(p):
            report.C1 = tail_constant_C1(env, T, p)
            report.eps = float(eps)
            report.N1 = n1_threshold(env, T, p, eps)
            report.p1_series = p1_series_bound(env, T, p, report.N1)
        else:
            logger.warning("p=%s does not exceed gamma/beta=%.4g; C1 left empty", p, env.pstar)
    return report


def write_bounds_json(report: BoundReport, target: str | Path) -> Path:
    target = Path(target)
    text = json.dumps(report.to_dict(), sort_keys=True, indent=2) + "\n"
    try:
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(text, encoding="utf-8")
    except OSError as e:
        raise ReportError(f"could not write bound report to {target}: {e}") from e
    return target


def read_bounds_json(source: str | Path) -> BoundReport:
    try:
        data = json.loads(Path(source).read_text(encoding="utf-8"))
    except (OSError, ValueError) as e:
        raise ReportError(f"could not read bound report from {source}: {e}") from e
    return BoundReport.from_dict(data)
