"""
Process and mesh descriptions for the samplers.
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np

from core.errors import DomainError


class ProcessFamily(Enum):
    """Process families with exact transition samplers."""
    STABLE_LEVY = "stable-levy"


@dataclass(frozen=True)
class ProcessSpec:
    """Symmetric alpha-stable Lévy motion with characteristic function exp(-c|t|^alpha) at t = 1."""
    alpha: float
    c: float = 0.5
    T: float = 1.0
    family: ProcessFamily = ProcessFamily.STABLE_LEVY

    def __post_init__(self):
        family = self.family if isinstance(self.family, ProcessFamily) else ProcessFamily(self.family)
        object.__setattr__(self, "family", family)
        if not 0 < self.alpha <= 2:
            raise DomainError(f"alpha must lie in (0, 2], got {self.alpha}")
        if not self.c > 0:
            raise DomainError(f"scale c must be positive, got {self.c}")
        if not self.T > 0:
            raise DomainError(f"horizon T must be positive, got {self.T}")
        for name in ("alpha", "c", "T"):
            object.__setattr__(self, name, float(getattr(self, name)))

    @property
    def is_brownian(self) -> bool:
        return self.alpha == 2.0

    def to_dict(self) -> dict:
        return {
            "family": self.family.value,
            "alpha": self.alpha,
            "c": self.c,
            "T": self.T,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ProcessSpec":
        return cls(
            alpha=data["alpha"],
            c=data.get("c", 0.5),
            T=data.get("T", 1.0),
            family=ProcessFamily(data.get("family", ProcessFamily.STABLE_LEVY.value)),
        )


@dataclass(frozen=True)
class MeshSpec:
    """Uniform mesh with n points including t = 0."""
    n: int

    def __post_init__(self):
        if isinstance(self.n, bool) or int(self.n) != self.n or self.n < 1:
            raise DomainError(f"mesh needs n >= 1 points, got {self.n!r}")
        object.__setattr__(self, "n", int(self.n))

    def step(self, T: float) -> float:
        if self.n < 2:
            return 0.0
        return T / (self.n - 1)

    def times(self, T: float) -> np.ndarray:
        if self.n == 1:
            return np.zeros(1)
        grid = np.linspace(0.0, T, self.n)
        grid[-1] = T
        return grid
