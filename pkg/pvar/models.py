"""
Per-path oscillation records.
"""

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class StoppingRecord:
    """Successive range-exceedance times tau_0 = 0 < tau_1 < ... at level r."""
    r: int
    times: tuple[float, ...]
    indices: tuple[int, ...]
    terminated: bool = True

    @property
    def count(self) -> int:
        """Number of stopping times beyond tau_0."""
        return len(self.times) - 1

    @property
    def durations(self) -> np.ndarray:
        """zeta_i = tau_i - tau_{i-1} for the recorded times."""
        return np.diff(np.asarray(self.times, dtype=np.float64))

    def to_dict(self) -> dict:
        return {
            "r": self.r,
            "times": list(self.times),
            "indices": list(self.indices),
            "terminated": self.terminated,
        }


@dataclass
class OscillationProfile:
    """Statistics entering the dyadic decomposition of v_p for one path."""
    p: float
    a0: float
    r1: int
    band_counts: dict[int, int] = field(default_factory=dict)
    nu0: int = 0
    mhat: float = 0.0
    dyadic_bound: float = 0.0

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "a0": self.a0,
            "r1": self.r1,
            "band_counts": {str(r): y for r, y in sorted(self.band_counts.items())},
            "nu0": self.nu0,
            "Mhat": self.mhat,
            "dyadic_bound": self.dyadic_bound,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "OscillationProfile":
        return cls(
            p=data["p"],
            a0=data["a0"],
            r1=data["r1"],
            band_counts={int(r): int(y) for r, y in data.get("band_counts", {}).items()},
            nu0=data.get("nu0", 0),
            mhat=data.get("Mhat", 0.0),
            dyadic_bound=data.get("dyadic_bound", 0.0),
        )
