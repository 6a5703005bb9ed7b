"""
Closed-form bounds on the durations zeta_i = tau_i - tau_{i-1} between
level-r stopping times, on the stopping times themselves, on the band
counts Y_r, and the tail constant C1 of the p-variation.

Every bound takes the class envelope alpha(h, a) <= K h^beta / (a ∧ a0)^gamma
in place of the true transition-tail function.
"""

import logging
import math

from bounds.gamma import UNIT_GAP_CAP, lower_incomplete_gamma
from core.dyadic import r1_cutoff
from core.errors import DomainError, PreconditionError, VacuousBoundError
from core.models import MAX_LEVEL, ClassEnvelope, DyadicLevel

logger = logging.getLogger(__name__)

# e^-1 + 7/24 < 0.66, and 0.66 / 0.34 < 1.95
UNIT_LAPLACE = math.exp(-1.0) + UNIT_GAP_CAP
UNIT_BAND_FACTOR = 1.95

# relative slack on the alpha <= 1/2 precondition at the T_r boundary
_HALF_RTOL = 1e-12


def _check_T(T: float) -> float:
    if not T > 0 or not math.isfinite(T):
        raise DomainError(f"horizon T must be positive and finite, got {T}")
    return float(T)


def _duration_scale(r: int, env: ClassEnvelope) -> float:
    """(M_{r+2} ∧ a0)."""
    return min(DyadicLevel(r + 2).size, env.a0)


def duration_tail_bound(u: float, r: int, env: ClassEnvelope, T: float | None = None) -> float:
    """P(zeta_{i,r} <= u | past) <= e / (1 - e), e = K u^beta / (M_{r+2} ∧ a0)^gamma."""
    if u < 0 or (T is not None and u > T):
        raise DomainError(f"duration u must lie in [0, T], got {u}")
    e = env.alpha_bound(u, DyadicLevel(r + 2).size)
    if e >= 1.0:
        raise VacuousBoundError(f"envelope value {e:.6g} at u={u}, r={r} is at least 1")
    return e / (1.0 - e)


def laplace_duration_bound(T0: float, r: int, env: ClassEnvelope, T: float = 1.0) -> float:
    """E[exp(-zeta) | past] <= e^-T0 + 2 K (M_{r+2} ∧ a0)^-gamma gamma(beta + 1, T0).

    gamma(beta + 1, T0) is taken as beta gamma(beta, T0) - T0^beta e^-T0.
    """
    T = _check_T(T)
    if not 0.0 < T0 <= min(T, 1.0):
        raise DomainError(f"T0 must lie in (0, min(T, 1)], got {T0}")
    scale = _duration_scale(r, env) ** env.gamma
    alpha_at_t0 = env.K * T0 ** env.beta / scale
    if alpha_at_t0 > 0.5 * (1.0 + _HALF_RTOL):
        raise PreconditionError(f"envelope value {alpha_at_t0:.6g} at T0={T0} exceeds 1/2")
    shifted = env.beta * lower_incomplete_gamma(env.beta, T0) - T0 ** env.beta * math.exp(-T0)
    return math.exp(-T0) + 2.0 * env.K / scale * shifted


def compute_Tr(r: int, env: ClassEnvelope, T: float) -> float:
    """T_r = min{((M_{r+2} ∧ a0)^gamma / (2K))^(1/beta), T, 1}."""
    T = _check_T(T)
    first = (_duration_scale(r, env) ** env.gamma / (2.0 * env.K)) ** (1.0 / env.beta)
    return min(first, T, 1.0)


def laplace_bound_r(r: int, env: ClassEnvelope, T: float) -> float:
    """beta gamma(beta, T_r) / T_r^beta when T_r < 1, else e^-1 + 7/24."""
    tr = compute_Tr(r, env, T)
    if tr < 1.0:
        return env.beta * lower_incomplete_gamma(env.beta, tr) / tr ** env.beta
    return UNIT_LAPLACE


def tau_tail_bound(j: int, r: int, env: ClassEnvelope, T: float) -> float:
    """P(tau_{j,r} <= T) <= e^T L_r^j; not clamped to 1."""
    if isinstance(j, bool) or int(j) != j or j < 1:
        raise DomainError(f"stopping index j must be a positive integer, got {j!r}")
    T = _check_T(T)
    return math.exp(T) * laplace_bound_r(r, env, T) ** int(j)


def expected_band_bound(r: int, env: ClassEnvelope, T: float) -> float:
    """E Y_r <= 4 e^T / T_r when T_r < 1, else 1.95 e^T."""
    T = _check_T(T)
    tr = compute_Tr(r, env, T)
    if tr < 1.0:
        return 4.0 * math.exp(T) / tr
    return UNIT_BAND_FACTOR * math.exp(T)


def tr_inverse_bound(r: int, env: ClassEnvelope, T: float) -> float:
    """1/T_r <= 1 + 1/T + (K 2^(1 + gamma (r+3)))^(1/beta)."""
    T = _check_T(T)
    return 1.0 + 1.0 / T + (env.K * 2.0 ** (1.0 + env.gamma * (r + 3))) ** (1.0 / env.beta)


def _check_exponent(env: ClassEnvelope, p: float) -> None:
    if not env.admits(p):
        raise DomainError(f"p={p} must exceed the critical exponent gamma/beta={env.pstar:.6g}")


def tail_constant_C1(env: ClassEnvelope, T: float, p: float) -> float:
    """C1 with P(S_1 > N/2) <= C1 / N, finite only for p > gamma/beta."""
    T = _check_T(T)
    _check_exponent(env, p)
    start = r1_cutoff(env.a0) + 1
    excess = p - env.pstar
    coarse = (6.0 + 4.0 / T) * 2.0 ** (-start * p) / (1.0 - 2.0 ** (-p))
    fine = (
        env.K ** (1.0 / env.beta)
        * 2.0 ** (2.0 + (3.0 * env.gamma + 1.0) / env.beta - start * excess)
        / (1.0 - 2.0 ** (-excess))
    )
    return 2.0 * math.exp(T) * (coarse + fine)


def p1_series_bound(env: ClassEnvelope, T: float, p: float, N: float, r_max: int | None = None) -> float:
    """(2 e^T / N) sum_{r1 < r <= r_max} 2^(-rp) {4/T_r if T_r < 1, else 1.95}."""
    T = _check_T(T)
    if not N > 0:
        raise DomainError(f"threshold N must be positive, got {N}")
    if r_max is None:
        _check_exponent(env, p)
        r_max = MAX_LEVEL - 2
    total = 0.0
    for r in range(r1_cutoff(env.a0) + 1, min(r_max, MAX_LEVEL - 2) + 1):
        tr = compute_Tr(r, env, T)
        weight = 4.0 / tr if tr < 1.0 else UNIT_BAND_FACTOR
        total += 2.0 ** (-r * p) * weight
    return 2.0 * math.exp(T) / N * total


def p1_bound(env: ClassEnvelope, T: float, p: float, N: float) -> float:
    """C1 / N."""
    if not N > 0:
        raise DomainError(f"threshold N must be positive, got {N}")
    return tail_constant_C1(env, T, p) / N


def n1_threshold(env: ClassEnvelope, T: float, p: float, eps: float) -> int:
    """Smallest N1 = ceil(3 C1 / eps) + 1 with C1 / N <= eps / 3 for N >= N1."""
    if not 0 < eps:
        raise DomainError(f"eps must be positive, got {eps}")
    return math.ceil(3.0 * tail_constant_C1(env, T, p) / eps) + 1
