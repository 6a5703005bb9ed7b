"""
Experiment drivers.

Each driver simulates what it needs from the config seed, folds per-path
results in path-index order, and returns a RunManifest. Paths are processed
on a thread pool; the compiled scans release the GIL.
"""

import logging
import math
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Sequence, TypeVar

import numpy as np

from bounds.duration import expected_band_bound, tail_constant_C1, tau_tail_bound
from bounds.report import build_bound_report
from config.experiment import ExperimentConfig
from config.settings import SIGMA_SLACK
from core.errors import ConfigError, PreconditionError
from core.models import ClassEnvelope, SamplePath
from experiments.models import Classification, RunKind, RunManifest, SummaryRow, ValidationCheck
from kernel.fit import fit_envelope
from kernel.ottaviani import ottaviani_check
from kernel.tail import analytic_envelope, estimate_grid
from pvar.exact import pvar_exact
from pvar.oscillation import band_count, stopping_times
from pvar.profile import dyadic_upper_bound
from simulate.models import MeshSpec
from simulate.paths import simulate_ensemble

logger = logging.getLogger(__name__)

T_ = TypeVar("T_")


def _map_paths(func: Callable[[SamplePath], T_], paths: Sequence[SamplePath], workers: int) -> list[T_]:
    if workers <= 1:
        return [func(path) for path in paths]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, paths))


def classify_medians(
    medians: Sequence[float],
    diverge_factor: float,
    stabilize_tol: float,
) -> Classification:
    """Classify medians over an increasing mesh ladder.

    Diverging: nondecreasing with total growth of at least diverge_factor.
    Stabilizing: relative change across the two finest meshes within
    stabilize_tol.
    """
    m = [float(v) for v in medians]
    if len(m) < 2:
        return Classification.UNDETERMINED
    if all(a <= b for a, b in zip(m, m[1:])) and m[-1] >= diverge_factor * m[0] and m[-1] > 0:
        return Classification.DIVERGING
    if abs(m[-1] - m[-2]) <= stabilize_tol * abs(m[-2]):
        return Classification.STABILIZING
    return Classification.UNDETERMINED


def default_report_p(envelope: ClassEnvelope, p_grid: Sequence[float]) -> float | None:
    """Smallest grid exponent above the critical one."""
    admitted = [p for p in p_grid if envelope.admits(p)]
    return min(admitted) if admitted else None


def _resolve_envelope(config: ExperimentConfig) -> ClassEnvelope | None:
    return config.envelope or analytic_envelope(config.spec, config.a0)


def _attach_bounds(manifest: RunManifest, envelope: ClassEnvelope | None, config: ExperimentConfig) -> None:
    if envelope is None:
        return
    manifest.bounds = build_bound_report(
        envelope,
        config.spec.T,
        levels=config.levels or None,
        j_values=config.j_values,
        p=default_report_p(envelope, config.p_grid),
    )


def run_sharpness(config: ExperimentConfig) -> RunManifest:
    """Median v_p over a mesh ladder, classified per exponent."""
    started = time.perf_counter()
    manifest = RunManifest(kind=RunKind.SHARPNESS, config=config.to_dict())
    p_grid = list(config.p_grid)

    # percentiles[mesh][p] = (p05, median, p95)
    percentiles: dict[int, dict[float, tuple[float, float, float]]] = {}
    for n in config.meshes:
        tick = time.perf_counter()
        paths = simulate_ensemble(config.spec, MeshSpec(n), config.n_paths, config.seed, config.workers)
        values = np.array(_map_paths(lambda path: [pvar_exact(path, p) for p in p_grid], paths, config.workers))
        percentiles[n] = {}
        for k, p in enumerate(p_grid):
            low, mid, high = np.percentile(values[:, k], [5, 50, 95])
            percentiles[n][p] = (float(low), float(mid), float(high))
        logger.info("Mesh %d: %d paths in %.1fs", n, config.n_paths, time.perf_counter() - tick)

    for p in p_grid:
        medians = [percentiles[n][p][1] for n in config.meshes]
        manifest.classifications[p] = classify_medians(medians, config.diverge_factor, config.stabilize_tol)
        logger.info("p=%.3g: medians %s -> %s", p, ["%.4g" % m for m in medians], manifest.classifications[p].value)

    for n in config.meshes:
        for p in p_grid:
            low, mid, high = percentiles[n][p]
            manifest.summary.append(
                SummaryRow(mesh_n=n, p=p, median_vp=mid, p05=low, p95=high,
                           classification=manifest.classifications[p])
            )

    _attach_bounds(manifest, _resolve_envelope(config), config)
    manifest.wall_clock = time.perf_counter() - started
    return manifest


def run_membership(config: ExperimentConfig) -> RunManifest:
    """Estimate the tail grid, fit the class envelope and evaluate its bounds."""
    started = time.perf_counter()
    manifest = RunManifest(kind=RunKind.MEMBERSHIP, config=config.to_dict())
    manifest.tail_grid = estimate_grid(
        config.spec, config.h_grid, config.a_grid, config.tail_samples, config.seed, config.workers
    )
    manifest.kernel_fit = fit_envelope(manifest.tail_grid, config.spec.T)
    if manifest.kernel_fit.envelope is None:
        manifest.warnings.append("envelope fit inconclusive: too few grid cells with tail mass in (0, 1/2)")
    _attach_bounds(manifest, manifest.kernel_fit.envelope, config)
    manifest.wall_clock = time.perf_counter() - started
    return manifest


def _proportion_check(name: str, parameters: dict, hits: int, n: int, bound: float) -> ValidationCheck:
    observed = hits / n
    slack = SIGMA_SLACK * math.sqrt(observed * (1.0 - observed) / n)
    return ValidationCheck(name, parameters, observed, bound, slack, observed <= bound + slack)


def run_tail_chain(
    chain: Sequence[tuple[float, float, int]],
    envelope: ClassEnvelope,
    T: float,
    p: float,
    thresholds: Sequence[float],
) -> list[ValidationCheck]:
    """Check P(v_p > N) <= C1/N + P((2 Mhat)^p > sqrt(N/2)) + P(nu_0 > sqrt(N/2)).

    `chain` holds one (v_p, (2 Mhat)^p, nu_0) triple per path; the last two
    tails are estimated from the same paths.
    """
    n = len(chain)
    if n == 0:
        raise ConfigError("tail chain needs at least one path")
    c1 = tail_constant_C1(envelope, T, p)
    checks = []
    for N in thresholds:
        root = math.sqrt(N / 2.0)
        hits = sum(1 for vp, _, _ in chain if vp > N)
        p2 = sum(1 for _, big, _ in chain if big > root) / n
        p3 = sum(1 for _, _, nu in chain if nu > root) / n
        checks.append(_proportion_check("pvar_tail_chain", {"p": p, "N": N}, hits, n, c1 / N + p2 + p3))
    return checks


def _path_record(path: SamplePath, config: ExperimentConfig, admitted: list[float]) -> dict:
    cap = max(config.j_values)
    record = {
        "tau_counts": {r: stopping_times(path, r, max_times=cap).count for r in config.levels},
        "bands": {r: band_count(path, r) for r in config.levels},
        "violations": 0,
        "chain": {},
    }
    for p in config.p_grid:
        vp = pvar_exact(path, p)
        profile = dyadic_upper_bound(path, p, config.a0)
        if vp > profile.dyadic_bound:
            record["violations"] += 1
        if p in admitted:
            record["chain"][p] = (vp, (2.0 * profile.mhat) ** p, profile.nu0)
    return record


def run_bound_validation(config: ExperimentConfig) -> RunManifest:
    """Monte Carlo domination checks of the stopping-time, band-count and tail bounds."""
    envelope = _resolve_envelope(config)
    if envelope is None:
        raise ConfigError(
            f"no envelope for alpha={config.spec.alpha}: set env_K, env_beta and env_gamma in the config"
        )
    started = time.perf_counter()
    manifest = RunManifest(kind=RunKind.VALIDATION, config=config.to_dict())
    T = config.spec.T
    n = config.n_paths
    admitted = [p for p in config.p_grid if envelope.admits(p)]

    paths = simulate_ensemble(config.spec, MeshSpec(config.validation_mesh), n, config.seed, config.workers)
    records = _map_paths(lambda path: _path_record(path, config, admitted), paths, config.workers)
    logger.info("Validation statistics for %d paths in %.1fs", n, time.perf_counter() - started)

    for r in config.levels:
        for j in config.j_values:
            hits = sum(1 for rec in records if rec["tau_counts"][r] >= j)
            manifest.checks.append(
                _proportion_check("stopping_time_tail", {"r": r, "j": j}, hits, n, tau_tail_bound(j, r, envelope, T))
            )
        counts = np.array([rec["bands"][r] for rec in records], dtype=np.float64)
        mean = float(counts.mean())
        se = float(counts.std(ddof=1) / math.sqrt(n)) if n > 1 else 0.0
        bound = expected_band_bound(r, envelope, T)
        slack = SIGMA_SLACK * se
        manifest.checks.append(ValidationCheck("band_count_mean", {"r": r}, mean, bound, slack, mean <= bound + slack))

    violations = sum(rec["violations"] for rec in records)
    manifest.checks.append(
        ValidationCheck(
            "dyadic_decomposition",
            {"p_grid": list(config.p_grid), "a0": config.a0},
            float(violations), 0.0, 0.0, violations == 0,
        )
    )

    for p in admitted:
        chain = [rec["chain"][p] for rec in records]
        manifest.checks.extend(run_tail_chain(chain, envelope, T, p, config.tail_N))

    for h in config.ottaviani_h:
        for M in config.ottaviani_M:
            try:
                result = ottaviani_check(
                    config.spec, 0.0, h, M, config.ottaviani_paths, config.seed, workers=config.workers
                )
            except PreconditionError as e:
                manifest.warnings.append(f"maximal inequality skipped at h={h}, M={M}: {e}")
                logger.warning("Maximal inequality skipped at h=%s, M=%s: %s", h, M, e)
                continue
            manifest.checks.append(
                ValidationCheck("maximal_inequality", {"h": result.h, "M": M}, result.lhs, result.rhs,
                                result.slack, result.holds)
            )

    _attach_bounds(manifest, envelope, config)
    manifest.wall_clock = time.perf_counter() - started
    failed = manifest.failed_checks
    logger.info("Validation: %d checks, %d failed", len(manifest.checks), len(failed))
    return manifest
