"""
Tests for the stable samplers and path simulation.
"""

import numpy as np
import pytest
from scipy import stats

from core import DomainError, ReportError
from simulate import (
    MeshSpec,
    ProcessSpec,
    path_rng,
    read_path_csv,
    sample_stable_increment,
    sample_stable_increments,
    simulate_ensemble,
    simulate_path,
    write_path_csv,
)

SEED = 12345


def test_brownian_increments_are_gaussian():
    # alpha = 2, c = 0.5, dt = 1 gives N(0, 1)
    sample = sample_stable_increments(2.0, 0.5, 1.0, 20000, path_rng(SEED, 7))
    assert stats.kstest(sample, "norm").pvalue > 1e-3
    assert sample.var() == pytest.approx(1.0, rel=0.05)


def test_brownian_variance_scales_with_lag():
    sample = sample_stable_increments(2.0, 0.5, 0.01, 20000, path_rng(SEED, 8))
    assert sample.var() == pytest.approx(0.01, rel=0.05)


def test_cauchy_increments():
    # alpha = 1 increments over dt have Cauchy scale c * dt
    sample = sample_stable_increments(1.0, 0.5, 1.0, 20000, path_rng(SEED, 9))
    assert stats.kstest(sample, stats.cauchy(scale=0.5).cdf).pvalue > 1e-3


def test_cauchy_quartiles():
    sample = sample_stable_increments(1.0, 1.0, 1.0, 40000, path_rng(SEED, 11))
    low, high = np.quantile(sample, [0.25, 0.75])
    assert low == pytest.approx(-1.0, abs=0.06)
    assert high == pytest.approx(1.0, abs=0.06)


def test_brownian_lag_scaling_two_sample():
    # lag 4 doubles the standard deviation
    wide = sample_stable_increments(2.0, 0.5, 4.0, 20000, path_rng(SEED, 12))
    narrow = sample_stable_increments(2.0, 0.5, 1.0, 20000, path_rng(SEED, 13))
    assert stats.ks_2samp(wide, 2.0 * narrow).pvalue > 1e-3


def test_path_increments_are_uncorrelated():
    path = simulate_path(ProcessSpec(alpha=2.0), MeshSpec(40001), SEED, 4)
    increments = path.increments()
    lag1 = np.corrcoef(increments[:-1], increments[1:])[0, 1]
    assert abs(lag1) < 0.025


@pytest.mark.parametrize("alpha", [1.2, 2.0])
def test_paths_are_self_similar(alpha):
    # X_{2h} has the law of 2^(1/alpha) X_h; compare disjoint halves of the ensemble
    paths = simulate_ensemble(ProcessSpec(alpha=alpha), MeshSpec(3), 4000, SEED)
    at_h = np.array([path.values[1] for path in paths[:2000]])
    at_2h = np.array([path.values[2] for path in paths[2000:]])
    assert stats.ks_2samp(at_2h, 2.0 ** (1.0 / alpha) * at_h).pvalue > 1e-3


@pytest.mark.parametrize("alpha", [0.8, 1.5])
def test_endpoint_is_symmetric(alpha):
    paths = simulate_ensemble(ProcessSpec(alpha=alpha), MeshSpec(5), 4000, SEED + 1)
    ends = np.array([path.values[-1] for path in paths])
    assert stats.ks_2samp(ends[:2000], -ends[2000:]).pvalue > 1e-3


@pytest.mark.slow
def test_self_similarity_on_fine_mesh():
    spec = ProcessSpec(alpha=1.5)
    paths = simulate_ensemble(spec, MeshSpec(513), 10000, SEED + 2, workers=4)
    at_h = np.array([path.values[128] for path in paths[:5000]])
    at_2h = np.array([path.values[256] for path in paths[5000:]])
    assert stats.ks_2samp(at_2h, 2.0 ** (1.0 / 1.5) * at_h).pvalue > 1e-3


@pytest.mark.slow
def test_general_alpha_matches_scipy_stable_law():
    sample = sample_stable_increments(1.5, 1.0, 1.0, 1000, path_rng(SEED, 10))
    law = stats.levy_stable(1.5, 0.0)
    assert stats.kstest(sample, law.cdf).pvalue > 1e-3


def test_single_increment_is_float():
    value = sample_stable_increment(1.3, 0.5, 0.1, path_rng(SEED))
    assert isinstance(value, float)
    assert np.isfinite(value)


@pytest.mark.parametrize(
    "alpha, c, dt",
    [(0.0, 0.5, 1.0), (2.5, 0.5, 1.0), (1.0, 0.0, 1.0), (1.0, 0.5, 0.0)],
)
def test_sampler_rejects_bad_parameters(alpha, c, dt):
    with pytest.raises(DomainError):
        sample_stable_increments(alpha, c, dt, 10, path_rng(SEED))


def test_path_rng_streams():
    first = path_rng(SEED, 3).standard_normal(5)
    again = path_rng(SEED, 3).standard_normal(5)
    other = path_rng(SEED, 4).standard_normal(5)
    np.testing.assert_array_equal(first, again)
    assert not np.array_equal(first, other)
    # longer keys give separate streams
    assert not np.array_equal(first, path_rng(SEED, 3, 0).standard_normal(5))


@pytest.mark.parametrize("seed", [-1, 2**64, 1.5, True])
def test_path_rng_rejects_bad_seed(seed):
    with pytest.raises(DomainError):
        path_rng(seed)


def test_process_spec_validation():
    spec = ProcessSpec(alpha=2)
    assert spec.is_brownian
    assert ProcessSpec.from_dict(spec.to_dict()) == spec
    with pytest.raises(DomainError):
        ProcessSpec(alpha=2.1)
    with pytest.raises(DomainError):
        ProcessSpec(alpha=1.0, T=0.0)
    with pytest.raises(DomainError):
        MeshSpec(0)


def test_simulate_path_shape_and_start():
    spec = ProcessSpec(alpha=1.5)
    path = simulate_path(spec, MeshSpec(1025), SEED)
    assert len(path) == 1025
    assert path.values[0] == 0.0
    assert path.times[-1] == spec.T
    np.testing.assert_allclose(np.diff(path.times), spec.T / 1024)


def test_simulate_path_is_reproducible():
    spec = ProcessSpec(alpha=1.2)
    a = simulate_path(spec, MeshSpec(257), SEED, index=5)
    b = simulate_path(spec, MeshSpec(257), SEED, index=5)
    c = simulate_path(spec, MeshSpec(257), SEED, index=6)
    assert a == b
    assert a != c


def test_single_point_mesh():
    path = simulate_path(ProcessSpec(alpha=2.0, T=2.0), MeshSpec(1), SEED)
    assert len(path) == 1
    assert path.values[0] == 0.0
    assert path.horizon == 2.0


def test_ensemble_order_independent_of_workers():
    spec = ProcessSpec(alpha=1.7)
    serial = simulate_ensemble(spec, MeshSpec(129), 8, SEED, workers=1)
    threaded = simulate_ensemble(spec, MeshSpec(129), 8, SEED, workers=4)
    assert serial == threaded
    assert serial[3] == simulate_path(spec, MeshSpec(129), SEED, 3)


def test_ensemble_rejects_empty():
    with pytest.raises(DomainError):
        simulate_ensemble(ProcessSpec(alpha=2.0), MeshSpec(5), 0, SEED)


def test_path_csv_keeps_every_digit(tmp_path):
    path = simulate_path(ProcessSpec(alpha=1.1), MeshSpec(65), SEED)
    target = write_path_csv(path, tmp_path / "nested" / "path.csv")
    assert target.read_text().startswith("t,x\n")
    assert read_path_csv(target) == path


def test_read_path_csv_rejects_bad_header(tmp_path):
    source = tmp_path / "bad.csv"
    source.write_text("time,value\n0,0\n1,1\n")
    with pytest.raises(ReportError):
        read_path_csv(source)
    with pytest.raises(ReportError):
        read_path_csv(tmp_path / "missing.csv")
