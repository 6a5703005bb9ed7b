"""
Symmetric alpha-stable variates by the Chambers-Mallows-Stuck transform.

A standard symmetric stable S(alpha) has characteristic function
exp(-|t|^alpha). With a uniform angle phi on (-pi/2, pi/2) and an
independent unit exponential w,

    S = sin(alpha phi) / cos(phi)^(1/alpha) * (cos((1 - alpha) phi) / w)^((1 - alpha) / alpha)

which reduces to tan(phi) at alpha = 1 and to 2 sqrt(w) sin(phi) at alpha = 2.
An increment of the Lévy motion over dt is (c dt)^(1/alpha) S.
"""

import numpy as np

from core.errors import DomainError

MAX_SEED = 2**64


def path_rng(seed: int, *keys: int) -> np.random.Generator:
    """Counter-based generator for the stream `keys` of a 64-bit seed.

    Path i of an ensemble uses the key (i,); other consumers use longer keys,
    so their streams never overlap with path streams.
    """
    if isinstance(seed, bool) or int(seed) != seed or not 0 <= seed < MAX_SEED:
        raise DomainError(f"seed must be an unsigned 64-bit integer, got {seed!r}")
    keys = keys or (0,)
    if any(k < 0 for k in keys):
        raise DomainError(f"stream keys must be nonnegative, got {keys}")
    sequence = np.random.SeedSequence(int(seed), spawn_key=tuple(int(k) for k in keys))
    return np.random.Generator(np.random.Philox(sequence))


def _check_parameters(alpha: float, c: float, dt: float) -> None:
    if not 0 < alpha <= 2:
        raise DomainError(f"alpha must lie in (0, 2], got {alpha}")
    if not c > 0:
        raise DomainError(f"scale c must be positive, got {c}")
    if not dt > 0:
        raise DomainError(f"time step must be positive, got {dt}")


def standard_symmetric_stable(alpha: float, size: int, rng: np.random.Generator) -> np.ndarray:
    """Draw `size` standard symmetric stable variates."""
    phi = rng.uniform(-np.pi / 2, np.pi / 2, size)
    if alpha == 1.0:
        return np.tan(phi)
    w = rng.standard_exponential(size)
    if alpha == 2.0:
        return 2.0 * np.sqrt(w) * np.sin(phi)
    return (
        np.sin(alpha * phi) / np.cos(phi) ** (1.0 / alpha)
        * (np.cos((1.0 - alpha) * phi) / w) ** ((1.0 - alpha) / alpha)
    )


def sample_stable_increments(alpha: float, c: float, dt: float, size: int, rng: np.random.Generator) -> np.ndarray:
    """Independent increments of the Lévy motion over a lag dt."""
    _check_parameters(alpha, c, dt)
    if size < 0:
        raise DomainError(f"sample size must be nonnegative, got {size}")
    scale = (c * dt) ** (1.0 / alpha)
    return scale * standard_symmetric_stable(alpha, size, rng)


def sample_stable_increment(alpha: float, c: float, dt: float, rng: np.random.Generator) -> float:
    """One increment over a lag dt; Gaussian with variance 2 c dt when alpha = 2."""
    return float(sample_stable_increments(alpha, c, dt, 1, rng)[0])
