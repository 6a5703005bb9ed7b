"""
Transition-tail function alpha(h, a) = sup P(|X_{s+u} - X_s| >= a), u <= h.

For Lévy motion the supremum over starting points and times collapses:
increments are spatially homogeneous and the tail grows with the lag, so
alpha(h, a) is the tail of one increment over lag h.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np
import pandas as pd
from scipy import special, stats

from config.settings import CI_LEVEL, MC_BATCH_SIZE
from core.errors import DomainError, ReportError
from core.models import ClassEnvelope
from kernel.models import TailCell, TailGrid
from simulate.models import ProcessSpec
from simulate.stable import path_rng, sample_stable_increments

logger = logging.getLogger(__name__)

MIN_TAIL_SAMPLES = 1000

# stream key prefix for tail draws; cell k, batch b use keys (TAIL_STREAM, k, b)
TAIL_STREAM = 1


def wilson_interval(successes: int, n: int, level: float = CI_LEVEL) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion."""
    if n < 1 or not 0 <= successes <= n:
        raise DomainError(f"need 0 <= successes <= n and n >= 1, got {successes}/{n}")
    if not 0 < level < 1:
        raise DomainError(f"confidence level must lie in (0, 1), got {level}")
    z = stats.norm.ppf(1.0 - (1.0 - level) / 2.0)
    phat = successes / n
    denom = 1.0 + z * z / n
    center = (phat + z * z / (2.0 * n)) / denom
    half = z * math.sqrt(phat * (1.0 - phat) / n + z * z / (4.0 * n * n)) / denom
    low = min(max(center - half, 0.0), phat)
    high = max(min(center + half, 1.0), phat)
    return low, high


def _count_exceedances(spec: ProcessSpec, h: float, a: float, size: int, rng: np.random.Generator) -> int:
    draws = sample_stable_increments(spec.alpha, spec.c, h, size, rng)
    return int(np.count_nonzero(np.abs(draws) >= a))


def estimate_alpha(
    spec: ProcessSpec,
    h: float,
    a: float,
    n: int,
    seed: int,
    workers: int = 1,
    cell: int = 0,
) -> TailCell:
    """Estimate alpha(h, a) from n independent increments over lag h."""
    if not 0 < h <= spec.T:
        raise DomainError(f"lag h must lie in (0, T={spec.T}], got {h}")
    if not a > 0:
        raise DomainError(f"tail level a must be positive, got {a}")
    if n < MIN_TAIL_SAMPLES:
        raise DomainError(f"tail estimates need at least {MIN_TAIL_SAMPLES} samples, got {n}")

    sizes = [min(MC_BATCH_SIZE, n - start) for start in range(0, n, MC_BATCH_SIZE)]

    def _batch(b: int) -> int:
        return _count_exceedances(spec, h, a, sizes[b], path_rng(seed, TAIL_STREAM, cell, b))

    if workers <= 1:
        hits = sum(_batch(b) for b in range(len(sizes)))
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            hits = sum(pool.map(_batch, range(len(sizes))))

    low, high = wilson_interval(hits, n)
    return TailCell(h=float(h), a=float(a), alpha_hat=hits / n, n=int(n), ci_low=low, ci_high=high)


def estimate_grid(
    spec: ProcessSpec,
    h_grid,
    a_grid,
    n: int,
    seed: int,
    workers: int = 1,
) -> TailGrid:
    """Estimate every (h, a) pair; each cell draws from its own stream."""
    cells = []
    for k, (h, a) in enumerate((h, a) for h in h_grid for a in a_grid):
        cells.append(estimate_alpha(spec, h, a, n, seed, workers=workers, cell=k))
    logger.info("Estimated %d tail cells with %d samples each", len(cells), n)
    return TailGrid(cells=cells)


def gaussian_tail(h: float, a: float, c: float = 0.5) -> float:
    """Exact alpha(h, a) for alpha = 2: the increment is N(0, 2 c h)."""
    if h < 0 or not a > 0 or not c > 0:
        raise DomainError(f"gaussian tail needs h >= 0, a > 0, c > 0, got h={h}, a={a}, c={c}")
    if h == 0:
        return 0.0
    return float(special.erfc(a / (2.0 * math.sqrt(c * h))))


def cauchy_tail(h: float, a: float, c: float = 0.5) -> float:
    """Exact alpha(h, a) for alpha = 1: the increment is Cauchy with scale c h."""
    if h < 0 or not a > 0 or not c > 0:
        raise DomainError(f"cauchy tail needs h >= 0, a > 0, c > 0, got h={h}, a={a}, c={c}")
    if h == 0:
        return 0.0
    return float(2.0 * stats.cauchy.sf(a / (c * h)))


def analytic_envelope(spec: ProcessSpec, a0: float = 1.0) -> ClassEnvelope | None:
    """Closed-form class envelope where one is known.

    alpha = 2: Markov's inequality on the fourth moment, 3 (2 c h)^2 / a^4.
    alpha = 1: 1 - (2/pi) arctan(a / (c h)) <= (2 c / pi) h / a.
    """
    if spec.alpha == 2.0:
        return ClassEnvelope(K=3.0 * (2.0 * spec.c) ** 2, beta=2.0, gamma=4.0, a0=a0)
    if spec.alpha == 1.0:
        return ClassEnvelope(K=2.0 * spec.c / math.pi, beta=1.0, gamma=1.0, a0=a0)
    return None


def write_tailgrid_csv(grid: TailGrid, target: str | Path) -> Path:
    target = Path(target)
    try:
        target.parent.mkdir(parents=True, exist_ok=True)
        grid.to_frame().to_csv(target, index=False, float_format="%.17g", lineterminator="\n")
    except OSError as e:
        raise ReportError(f"could not write tail grid to {target}: {e}") from e
    return target


def read_tailgrid_csv(source: str | Path) -> TailGrid:
    try:
        frame = pd.read_csv(source, float_precision="round_trip")
    except (OSError, ValueError) as e:
        raise ReportError(f"could not read tail grid from {source}: {e}") from e
    return TailGrid.from_frame(frame)
