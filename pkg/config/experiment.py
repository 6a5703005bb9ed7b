"""
Experiment configuration.

Config files are flat UTF-8 `key = value` lines (the .env syntax, parsed by
python-dotenv); lists are comma separated. File values override the
defaults below, and explicit overrides (CLI flags) override file values.
"""

import logging
from dataclasses import dataclass, field, replace
from pathlib import Path

from dotenv import dotenv_values

from config.settings import (
    DEFAULT_SEED,
    DIVERGE_FACTOR,
    OUTPUT_DIR,
    STABILIZE_TOL,
    WORKERS,
)
from core.errors import ConfigError, LabError
from core.models import ClassEnvelope
from simulate.models import ProcessFamily, ProcessSpec

logger = logging.getLogger(__name__)

# meshes are counted in points, so 2^k + 1 points give a step of T / 2^k
DEFAULT_MESHES = (1025, 4097, 16385, 65537)
DEFAULT_P_GRID = (1.5, 2.5)
DEFAULT_H_GRID = tuple(2.0 ** -k for k in range(10, 5, -1))
DEFAULT_A_GRID = tuple(2.0 ** -k for k in range(4, 0, -1))

ENVELOPE_KEYS = ("env_K", "env_beta", "env_gamma")


def _floats(raw: str) -> tuple[float, ...]:
    return tuple(float(item) for item in raw.split(",") if item.strip())


def _ints(raw: str) -> tuple[int, ...]:
    return tuple(int(item) for item in raw.split(",") if item.strip())


_PARSERS = {
    "family": str.strip,
    "alpha": float,
    "c": float,
    "T": float,
    "meshes": _ints,
    "p_grid": _floats,
    "n_paths": int,
    "seed": int,
    "a0": float,
    "out": lambda raw: Path(raw.strip()),
    "diverge_factor": float,
    "stabilize_tol": float,
    "h_grid": _floats,
    "a_grid": _floats,
    "tail_samples": int,
    "levels": _ints,
    "j_values": _ints,
    "env_K": float,
    "env_beta": float,
    "env_gamma": float,
    "env_a0": float,
    "validation_mesh": int,
    "ottaviani_h": _floats,
    "ottaviani_M": _floats,
    "ottaviani_paths": int,
    "tail_N": _floats,
    "workers": int,
}


def _strictly_increasing(values) -> bool:
    return all(a < b for a, b in zip(values, values[1:]))


@dataclass(frozen=True)
class ExperimentConfig:
    """Everything a driver needs to reproduce a run."""
    spec: ProcessSpec = field(default_factory=lambda: ProcessSpec(alpha=2.0))
    meshes: tuple[int, ...] = DEFAULT_MESHES
    p_grid: tuple[float, ...] = DEFAULT_P_GRID
    n_paths: int = 100
    seed: int = DEFAULT_SEED
    a0: float = 1.0
    out: Path = OUTPUT_DIR
    diverge_factor: float = DIVERGE_FACTOR
    stabilize_tol: float = STABILIZE_TOL
    h_grid: tuple[float, ...] = DEFAULT_H_GRID
    a_grid: tuple[float, ...] = DEFAULT_A_GRID
    tail_samples: int = 100_000
    levels: tuple[int, ...] = (2, 3, 4)
    j_values: tuple[int, ...] = (1, 2, 3)
    envelope: ClassEnvelope | None = None
    validation_mesh: int = 4097
    ottaviani_h: tuple[float, ...] = (0.05, 0.1, 0.2)
    ottaviani_M: tuple[float, ...] = (1.0, 2.0, 4.0)
    ottaviani_paths: int = 20_000
    tail_N: tuple[float, ...] = (10.0, 100.0, 1000.0)
    workers: int = WORKERS

    def __post_init__(self):
        if not self.meshes or not _strictly_increasing(self.meshes) or self.meshes[0] < 2:
            raise ConfigError(f"meshes must be strictly increasing with at least 2 points, got {self.meshes}")
        if not _strictly_increasing(self.p_grid) or any(p <= 0 for p in self.p_grid):
            raise ConfigError(f"p_grid must be sorted, distinct and positive, got {self.p_grid}")
        if self.n_paths < 1 or self.tail_samples < 1 or self.ottaviani_paths < 1:
            raise ConfigError("path and sample counts must be at least 1")
        if not 0 <= self.seed < 2**64:
            raise ConfigError(f"seed must be an unsigned 64-bit integer, got {self.seed}")
        if not self.a0 > 0:
            raise ConfigError(f"a0 must be positive, got {self.a0}")
        if not self.diverge_factor > 1 or not self.stabilize_tol > 0:
            raise ConfigError("diverge_factor must exceed 1 and stabilize_tol must be positive")
        if not self.j_values or any(j < 1 for j in self.j_values):
            raise ConfigError(f"j_values must be nonempty and positive, got {self.j_values}")
        if not self.levels:
            raise ConfigError("levels must name at least one dyadic level")
        if self.validation_mesh < 2 or self.workers < 1:
            raise ConfigError("validation_mesh must be at least 2 and workers at least 1")

    @classmethod
    def from_mapping(cls, raw: dict) -> "ExperimentConfig":
        """Build a config from string values as read from a config file."""
        unknown = sorted(set(raw) - set(_PARSERS))
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(unknown)}")

        values = {}
        for key, text in raw.items():
            if text is None or not str(text).strip():
                raise ConfigError(f"config key {key!r} has no value")
            try:
                values[key] = _PARSERS[key](str(text))
            except ValueError as e:
                raise ConfigError(f"config key {key!r}: cannot parse {text!r}") from e

        try:
            spec = ProcessSpec(
                alpha=values.pop("alpha", 2.0),
                c=values.pop("c", 0.5),
                T=values.pop("T", 1.0),
                family=ProcessFamily(values.pop("family", ProcessFamily.STABLE_LEVY.value)),
            )
            envelope = cls._envelope(values)
            return cls(spec=spec, envelope=envelope, **values)
        except ConfigError:
            raise
        except (LabError, ValueError) as e:
            raise ConfigError(str(e)) from e

    @staticmethod
    def _envelope(values: dict) -> ClassEnvelope | None:
        given = [k for k in ENVELOPE_KEYS if k in values]
        env_a0 = values.pop("env_a0", None)
        if not given:
            if env_a0 is not None:
                raise ConfigError("env_a0 needs env_K, env_beta and env_gamma")
            return None
        if len(given) != len(ENVELOPE_KEYS):
            raise ConfigError(f"envelope needs all of {', '.join(ENVELOPE_KEYS)}")
        return ClassEnvelope(
            K=values.pop("env_K"),
            beta=values.pop("env_beta"),
            gamma=values.pop("env_gamma"),
            a0=env_a0 if env_a0 is not None else values.get("a0", 1.0),
        )

    def with_overrides(self, seed: int | None = None, out: str | Path | None = None) -> "ExperimentConfig":
        changes = {}
        if seed is not None:
            changes["seed"] = int(seed)
        if out is not None:
            changes["out"] = Path(out)
        return replace(self, **changes) if changes else self

    def to_dict(self) -> dict:
        return {
            "spec": self.spec.to_dict(),
            "meshes": list(self.meshes),
            "p_grid": list(self.p_grid),
            "n_paths": self.n_paths,
            "seed": self.seed,
            "a0": self.a0,
            "diverge_factor": self.diverge_factor,
            "stabilize_tol": self.stabilize_tol,
            "h_grid": list(self.h_grid),
            "a_grid": list(self.a_grid),
            "tail_samples": self.tail_samples,
            "levels": list(self.levels),
            "j_values": list(self.j_values),
            "envelope": None if self.envelope is None else self.envelope.to_dict(),
            "validation_mesh": self.validation_mesh,
            "ottaviani_h": list(self.ottaviani_h),
            "ottaviani_M": list(self.ottaviani_M),
            "ottaviani_paths": self.ottaviani_paths,
            "tail_N": list(self.tail_N),
        }


def load_config(path: str | Path | None = None, **overrides) -> ExperimentConfig:
    """Read a config file (or start from defaults) and apply overrides."""
    if path is None:
        config = ExperimentConfig()
    else:
        path = Path(path)
        if not path.is_file():
            raise ConfigError(f"config file not found: {path}")
        config = ExperimentConfig.from_mapping(dict(dotenv_values(path, encoding="utf-8")))
        logger.info("Loaded config from %s", path)
    return config.with_overrides(**overrides)
