"""
Shared domain records: sampled paths, dyadic levels and class envelopes.

Every record is immutable after construction. Paths keep their samples in
read-only numpy arrays so they can be shared across worker threads.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from core.errors import DomainError

MAX_LEVEL = 60


def _frozen_array(data) -> np.ndarray:
    arr = np.array(data, dtype=np.float64, copy=True).reshape(-1)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class SamplePath:
    """A finitely sampled trajectory on [0, T] with real values."""
    times: np.ndarray
    values: np.ndarray
    horizon: float = field(default=None)

    def __post_init__(self):
        times = _frozen_array(self.times)
        values = _frozen_array(self.values)
        if times.size == 0:
            raise DomainError("a sample path needs at least one point")
        if times.size != values.size:
            raise DomainError(f"times ({times.size}) and values ({values.size}) differ in length")
        if not np.all(np.isfinite(values)) or not np.all(np.isfinite(times)):
            raise DomainError("path samples must be finite")
        if times[0] != 0.0:
            raise DomainError("paths start at time 0")
        if times.size > 1 and not np.all(np.diff(times) > 0):
            raise DomainError("sample times must be strictly increasing")

        if self.horizon is not None:
            horizon = float(self.horizon)
        else:
            horizon = float(times[-1]) if times.size > 1 else 1.0
        if not horizon > 0:
            raise DomainError("horizon must be positive")
        # a single-point path sits at t = 0 and carries its horizon separately
        if times.size > 1 and times[-1] != horizon:
            raise DomainError(f"last sample time {times[-1]!r} differs from horizon {horizon!r}")

        object.__setattr__(self, "times", times)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "horizon", horizon)

    @classmethod
    def from_values(cls, values, horizon: float = 1.0) -> "SamplePath":
        """Place values on a uniform mesh over [0, horizon]."""
        values = np.asarray(values, dtype=np.float64).reshape(-1)
        if values.size == 1:
            return cls(times=[0.0], values=values, horizon=horizon)
        times = np.linspace(0.0, horizon, values.size)
        times[-1] = horizon
        return cls(times=times, values=values, horizon=horizon)

    def __len__(self) -> int:
        return int(self.values.size)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SamplePath):
            return NotImplemented
        return (
            self.horizon == other.horizon
            and np.array_equal(self.times, other.times)
            and np.array_equal(self.values, other.values)
        )

    def increments(self) -> np.ndarray:
        return np.diff(self.values)

    def subpath(self, indices) -> "SamplePath":
        """Keep the listed sample indices; both endpoints must be among them."""
        idx = np.asarray(indices, dtype=np.int64)
        if idx.size == 0 or idx[0] != 0 or idx[-1] != len(self) - 1:
            raise DomainError("a subpath must keep both endpoints")
        return SamplePath(times=self.times[idx], values=self.values[idx], horizon=self.horizon)

    def to_dict(self) -> dict:
        return {
            "times": self.times.tolist(),
            "values": self.values.tolist(),
            "horizon": self.horizon,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SamplePath":
        return cls(
            times=data["times"],
            values=data["values"],
            horizon=data.get("horizon"),
        )


@dataclass(frozen=True)
class DyadicLevel:
    """Dyadic level r with size M_r = 2^(-r-1)."""
    r: int

    def __post_init__(self):
        if isinstance(self.r, bool) or int(self.r) != self.r or abs(self.r) > MAX_LEVEL:
            raise DomainError(f"dyadic level must be an integer with |r| <= {MAX_LEVEL}, got {self.r!r}")
        object.__setattr__(self, "r", int(self.r))

    @property
    def size(self) -> float:
        return math.ldexp(1.0, -self.r - 1)

    def band(self) -> tuple[float, float]:
        """Half-open increment band [M_r, M_{r-1})."""
        return self.size, math.ldexp(1.0, -self.r)


@dataclass(frozen=True)
class ClassEnvelope:
    """Power envelope alpha(h, a) <= K h^beta / (a ∧ a0)^gamma."""
    K: float
    beta: float
    gamma: float
    a0: float

    def __post_init__(self):
        for name in ("K", "beta", "gamma", "a0"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise DomainError(f"envelope {name} must be finite, got {value!r}")
            object.__setattr__(self, name, float(value))
        if self.beta < 1:
            raise DomainError(f"envelope beta must be >= 1, got {self.beta}")
        if self.gamma <= 0 or self.K <= 0 or self.a0 <= 0:
            raise DomainError("envelope K, gamma and a0 must be positive")

    @property
    def pstar(self) -> float:
        return self.gamma / self.beta

    def admits(self, p: float) -> bool:
        """True when p lies above the critical exponent."""
        return p > self.pstar

    def alpha_bound(self, h: float, a: float) -> float:
        if h < 0 or a <= 0:
            raise DomainError(f"envelope needs h >= 0 and a > 0, got h={h}, a={a}")
        return self.K * h ** self.beta / min(a, self.a0) ** self.gamma

    def to_dict(self) -> dict:
        return {
            "K": self.K,
            "beta": self.beta,
            "gamma": self.gamma,
            "a0": self.a0,
            "pstar": self.pstar,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ClassEnvelope":
        return cls(K=data["K"], beta=data["beta"], gamma=data["gamma"], a0=data["a0"])
