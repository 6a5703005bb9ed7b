"""Simulate package: exact samplers for symmetric alpha-stable Lévy motion."""

from simulate.models import MeshSpec, ProcessFamily, ProcessSpec
from simulate.paths import read_path_csv, simulate_ensemble, simulate_path, write_path_csv
from simulate.stable import (
    path_rng,
    sample_stable_increment,
    sample_stable_increments,
    standard_symmetric_stable,
)

__all__ = [
    "MeshSpec",
    "ProcessFamily",
    "ProcessSpec",
    "path_rng",
    "read_path_csv",
    "sample_stable_increment",
    "sample_stable_increments",
    "simulate_ensemble",
    "simulate_path",
    "standard_symmetric_stable",
    "write_path_csv",
]
