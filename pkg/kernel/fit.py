"""
Fit of the power envelope alpha(h, a) <= K h^beta / (a ∧ a0)^gamma.

The fit is an ordinary least-squares line in log space over the cells with
usable tail mass, 0 < alpha_hat < 1/2. The fitted constant is then lifted
so the envelope dominates every fitted cell.
"""

import logging
import math

import numpy as np

from core.errors import DomainError
from core.models import ClassEnvelope
from kernel.models import KernelFit, TailCell, TailGrid, Verdict

logger = logging.getLogger(__name__)

MIN_DISTINCT = 3
# rounding slack before a fitted beta below 1 counts as a rejection
BETA_TOL = 1e-9
# relative rounding slack when comparing estimates to the envelope
HOLD_RTOL = 1e-12


def _fit_cells(grid: TailGrid) -> list[TailCell]:
    return [c for c in grid.cells if 0.0 < c.alpha_hat < 0.5]


def envelope_holds(grid: TailGrid, envelope: ClassEnvelope) -> bool:
    """Every cell satisfies alpha_hat <= envelope * (1 + CI half-width)."""
    return all(
        c.alpha_hat <= envelope.alpha_bound(c.h, c.a) * (1.0 + c.halfwidth + HOLD_RTOL)
        for c in grid.cells
    )


def fit_envelope(grid: TailGrid, T: float | None = None) -> KernelFit:
    """Fit (K, beta, gamma, a0) to a tail grid and grade the result."""
    if T is not None:
        if not T > 0:
            raise DomainError(f"horizon T must be positive, got {T}")
        grid.check_horizon(T)

    cells = _fit_cells(grid)
    n_h = len({c.h for c in cells})
    n_a = len({c.a for c in cells})
    if n_h < MIN_DISTINCT or n_a < MIN_DISTINCT:
        logger.info("Envelope fit skipped: %d lags and %d levels carry tail mass", n_h, n_a)
        return KernelFit(envelope=None, residual=0.0, verdict=Verdict.INCONCLUSIVE, n_cells=len(cells))

    log_h = np.log([c.h for c in cells])
    log_a = np.log([c.a for c in cells])
    y = np.log([c.alpha_hat for c in cells])

    design = np.column_stack([np.ones_like(y), log_h, -log_a])
    (log_k, beta, gamma), *_ = np.linalg.lstsq(design, y, rcond=None)
    beta_unclamped = float(beta)

    rejected = beta < 1.0 - BETA_TOL
    if beta < 1.0 and not rejected:
        beta = 1.0
    if rejected:
        # refit with beta pinned at its lower limit
        logger.warning("Fitted beta=%.4f is below 1; refitting with beta=1", beta)
        beta = 1.0
        (log_k, gamma), *_ = np.linalg.lstsq(design[:, [0, 2]], y - log_h, rcond=None)

    residual = float(np.max(np.abs(y - (log_k + beta * log_h - gamma * log_a))))
    if not gamma > 0:
        logger.warning("Fitted gamma=%.4f is not positive; no envelope", gamma)
        return KernelFit(
            envelope=None,
            residual=residual,
            verdict=Verdict.REJECTED,
            n_cells=len(cells),
            beta_unclamped=beta_unclamped,
        )

    a0 = max(c.a for c in cells)
    K = math.exp(log_k)
    lift = max(c.alpha_hat / (K * c.h ** beta / c.a ** gamma) for c in cells)
    envelope = ClassEnvelope(K=K * max(lift, 1.0), beta=float(beta), gamma=float(gamma), a0=a0)

    if rejected:
        verdict = Verdict.REJECTED
    elif envelope_holds(grid, envelope):
        verdict = Verdict.MEMBER
    else:
        verdict = Verdict.INCONCLUSIVE

    logger.info(
        "Envelope fit over %d cells: K=%.4g beta=%.4f gamma=%.4f a0=%.4g (%s)",
        len(cells), envelope.K, envelope.beta, envelope.gamma, a0, verdict.value,
    )
    return KernelFit(
        envelope=envelope,
        residual=residual,
        verdict=verdict,
        n_cells=len(cells),
        beta_unclamped=beta_unclamped,
    )
