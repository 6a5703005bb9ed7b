"""
Path simulation on a uniform mesh and the CSV path dump.

Increments are sampled exactly from the transition law, so the only
discretisation is the finite mesh itself.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np
import pandas as pd

from core.errors import DomainError, ReportError
from core.models import SamplePath
from simulate.models import MeshSpec, ProcessSpec
from simulate.stable import path_rng, sample_stable_increments

logger = logging.getLogger(__name__)


def simulate_path(spec: ProcessSpec, mesh: MeshSpec, seed: int, index: int = 0) -> SamplePath:
    """Simulate path number `index` of the ensemble keyed by `seed`."""
    rng = path_rng(seed, index)
    if mesh.n == 1:
        return SamplePath(times=[0.0], values=[0.0], horizon=spec.T)

    increments = sample_stable_increments(spec.alpha, spec.c, mesh.step(spec.T), mesh.n - 1, rng)
    values = np.empty(mesh.n)
    values[0] = 0.0
    np.cumsum(increments, out=values[1:])
    return SamplePath(times=mesh.times(spec.T), values=values, horizon=spec.T)


def simulate_ensemble(
    spec: ProcessSpec,
    mesh: MeshSpec,
    n_paths: int,
    seed: int,
    workers: int = 1,
) -> list[SamplePath]:
    """Simulate paths 0..n_paths-1; the result is ordered by path index."""
    if n_paths < 1:
        raise DomainError(f"n_paths must be at least 1, got {n_paths}")

    def _one(index: int) -> SamplePath:
        return simulate_path(spec, mesh, seed, index)

    if workers <= 1:
        return [_one(i) for i in range(n_paths)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_one, range(n_paths)))


def write_path_csv(path: SamplePath, target: str | Path) -> Path:
    """Write a `t,x` CSV with 17 significant digits."""
    target = Path(target)
    frame = pd.DataFrame({"t": path.times, "x": path.values})
    try:
        target.parent.mkdir(parents=True, exist_ok=True)
        frame.to_csv(target, index=False, float_format="%.17g", lineterminator="\n")
    except OSError as e:
        raise ReportError(f"could not write path to {target}: {e}") from e
    logger.debug("Wrote %d samples to %s", len(path), target)
    return target


def read_path_csv(source: str | Path) -> SamplePath:
    """Read a `t,x` CSV written by write_path_csv (or by hand)."""
    try:
        frame = pd.read_csv(source, dtype=np.float64, float_precision="round_trip")
    except (OSError, ValueError) as e:
        raise ReportError(f"could not read path from {source}: {e}") from e
    if list(frame.columns) != ["t", "x"]:
        raise ReportError(f"path CSV needs header t,x, got {','.join(frame.columns)}")
    times = frame["t"].to_numpy()
    horizon = float(times[-1]) if times.size > 1 else None
    return SamplePath(times=times, values=frame["x"].to_numpy(), horizon=horizon)
