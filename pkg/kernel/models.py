"""
Records for transition-tail estimates, envelope fits and the maximal
inequality check.
"""

from dataclasses import asdict, dataclass, field
from enum import Enum

import pandas as pd

from core.errors import DomainError
from core.models import ClassEnvelope

TAILGRID_COLUMNS = ["h", "a", "alpha_hat", "n", "ci_low", "ci_high"]


class Verdict(Enum):
    """Outcome of an envelope fit."""
    MEMBER = "member"
    INCONCLUSIVE = "inconclusive"
    REJECTED = "rejected"


@dataclass(frozen=True)
class TailCell:
    """Monte Carlo estimate of alpha(h, a) with its confidence interval."""
    h: float
    a: float
    alpha_hat: float
    n: int
    ci_low: float
    ci_high: float

    def __post_init__(self):
        if not self.h > 0 or not self.a > 0:
            raise DomainError(f"tail cell needs h > 0 and a > 0, got h={self.h}, a={self.a}")
        if self.n < 1:
            raise DomainError(f"tail cell needs at least one sample, got {self.n}")
        if not 0.0 <= self.ci_low <= self.alpha_hat <= self.ci_high <= 1.0:
            raise DomainError(
                f"tail cell interval [{self.ci_low}, {self.ci_high}] must bracket {self.alpha_hat} inside [0, 1]"
            )

    @property
    def halfwidth(self) -> float:
        return (self.ci_high - self.ci_low) / 2.0


@dataclass
class TailGrid:
    """Tail estimates over an (h, a) grid."""
    cells: list[TailCell] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.cells)

    def check_horizon(self, T: float) -> None:
        late = [c.h for c in self.cells if c.h > T]
        if late:
            raise DomainError(f"tail grid lags {late} exceed the horizon T={T}")

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame([asdict(c) for c in self.cells], columns=TAILGRID_COLUMNS)

    @classmethod
    def from_frame(cls, frame: pd.DataFrame) -> "TailGrid":
        missing = [c for c in TAILGRID_COLUMNS if c not in frame.columns]
        if missing:
            raise DomainError(f"tail grid table lacks columns {missing}")
        cells = [
            TailCell(
                h=float(row.h),
                a=float(row.a),
                alpha_hat=float(row.alpha_hat),
                n=int(row.n),
                ci_low=float(row.ci_low),
                ci_high=float(row.ci_high),
            )
            for row in frame.itertuples(index=False)
        ]
        return cls(cells=cells)

    def to_dict(self) -> dict:
        return {"cells": [asdict(c) for c in self.cells]}

    @classmethod
    def from_dict(cls, data: dict) -> "TailGrid":
        return cls(cells=[TailCell(**c) for c in data.get("cells", [])])


@dataclass
class KernelFit:
    """Fitted class envelope with its verdict.

    `envelope` is None when too few cells carry usable tail mass.
    """
    envelope: ClassEnvelope | None
    residual: float
    verdict: Verdict
    n_cells: int = 0
    beta_unclamped: float | None = None

    @property
    def pstar(self) -> float | None:
        return None if self.envelope is None else self.envelope.pstar

    def to_dict(self) -> dict:
        return {
            "envelope": None if self.envelope is None else self.envelope.to_dict(),
            "residual": self.residual,
            "verdict": self.verdict.value,
            "n_cells": self.n_cells,
            "beta_unclamped": self.beta_unclamped,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "KernelFit":
        envelope = data.get("envelope")
        return cls(
            envelope=None if envelope is None else ClassEnvelope.from_dict(envelope),
            residual=data.get("residual", 0.0),
            verdict=Verdict(data["verdict"]),
            n_cells=data.get("n_cells", 0),
            beta_unclamped=data.get("beta_unclamped"),
        )


@dataclass(frozen=True)
class OttavianiResult:
    """Both sides of the maximal inequality for one (t, h, M)."""
    t: float
    h: float
    M: float
    n_paths: int
    alpha_hat: float
    lhs: float
    rhs: float
    lhs_se: float
    rhs_se: float
    slack: float
    holds: bool

    @property
    def margin(self) -> float:
        return float(self.rhs + self.slack - self.lhs)

    def to_dict(self) -> dict:
        return asdict(self)
