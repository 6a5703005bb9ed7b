"""
Tests for experiment configuration, the drivers and the run artifacts.
"""

import json
from pathlib import Path

import pytest

from bounds import tail_constant_C1
from config.experiment import ExperimentConfig, load_config
from core import ClassEnvelope, ConfigError, DomainError, ReportError
from experiments import (
    Classification,
    RunKind,
    RunManifest,
    classify_medians,
    emit_report,
    load_manifest,
    run_bound_validation,
    run_membership,
    run_sharpness,
    run_tail_chain,
)
from simulate import ProcessSpec

SEED = 99


def _small_sharpness(tmp_path, **changes):
    values = dict(
        spec=ProcessSpec(alpha=2.0),
        meshes=(65, 257, 1025),
        p_grid=(1.0, 2.5),
        n_paths=20,
        seed=SEED,
        out=tmp_path,
        workers=2,
    )
    values.update(changes)
    return ExperimentConfig(**values)


def _small_validation(tmp_path, **changes):
    values = dict(
        spec=ProcessSpec(alpha=2.0),
        p_grid=(2.5,),
        n_paths=40,
        seed=SEED,
        out=tmp_path,
        validation_mesh=513,
        levels=(2, 3),
        j_values=(1, 2),
        tail_N=(10.0, 100.0),
        ottaviani_h=(0.1,),
        ottaviani_M=(1.0, 0.01),
        ottaviani_paths=2000,
        workers=2,
    )
    values.update(changes)
    return ExperimentConfig(**values)


# =============================================================================
# Classification
# =============================================================================

def test_classify_diverging():
    assert classify_medians([1.0, 1.5, 2.5], 2.0, 0.2) is Classification.DIVERGING


def test_classify_stabilizing():
    assert classify_medians([1.0, 1.4, 1.5], 2.0, 0.2) is Classification.STABILIZING
    # a dip rules out divergence
    assert classify_medians([1.0, 3.0, 2.9], 2.0, 0.2) is Classification.STABILIZING


def test_classify_undetermined():
    assert classify_medians([1.0, 1.2, 1.9], 2.0, 0.2) is Classification.UNDETERMINED
    assert classify_medians([1.0], 2.0, 0.2) is Classification.UNDETERMINED
    assert classify_medians([0.0, 0.0, 0.0], 2.0, 0.2) is Classification.STABILIZING


# =============================================================================
# Configuration
# =============================================================================

def test_config_defaults():
    config = ExperimentConfig()
    assert config.spec.alpha == 2.0
    assert config.meshes == (1025, 4097, 16385, 65537)
    assert "out" not in config.to_dict()


def test_config_from_mapping():
    config = ExperimentConfig.from_mapping({
        "alpha": "1.2",
        "c": "1.0",
        "meshes": "65, 257,1025",
        "p_grid": "1.0,1.5",
        "n_paths": "10",
        "seed": "5",
        "env_K": "1",
        "env_beta": "1",
        "env_gamma": "1.2",
    })
    assert config.spec == ProcessSpec(alpha=1.2, c=1.0)
    assert config.meshes == (65, 257, 1025)
    assert config.p_grid == (1.0, 1.5)
    assert config.envelope == ClassEnvelope(K=1.0, beta=1.0, gamma=1.2, a0=1.0)


@pytest.mark.parametrize(
    "raw",
    [
        {"colour": "blue"},
        {"n_paths": ""},
        {"n_paths": "many"},
        {"meshes": "257,65"},
        {"p_grid": "2.0,1.0"},
        {"alpha": "2.5"},
        {"env_K": "1", "env_beta": "1"},
        {"env_a0": "0.5"},
        {"env_K": "1", "env_beta": "0.5", "env_gamma": "1"},
        {"seed": "-1"},
        {"levels": ","},
    ],
)
def test_config_errors(raw):
    with pytest.raises(ConfigError):
        ExperimentConfig.from_mapping(raw)


def test_load_config_file_and_overrides(tmp_path):
    source = tmp_path / "lab.env"
    source.write_text("# sharpness ladder\nalpha = 1.5\nmeshes = 65,129\nn_paths = 3\nseed = 11\n", encoding="utf-8")
    config = load_config(source, seed=12, out=tmp_path / "out")
    assert config.spec.alpha == 1.5
    assert config.meshes == (65, 129)
    assert config.seed == 12
    assert config.out == tmp_path / "out"
    with pytest.raises(ConfigError):
        load_config(tmp_path / "missing.env")


# =============================================================================
# Drivers
# =============================================================================

def test_run_sharpness_summary(tmp_path):
    config = _small_sharpness(tmp_path)
    manifest = run_sharpness(config)
    assert manifest.kind is RunKind.SHARPNESS
    assert len(manifest.summary) == len(config.meshes) * len(config.p_grid)
    cells = {(row.mesh_n, row.p) for row in manifest.summary}
    assert cells == {(n, p) for n in config.meshes for p in config.p_grid}
    for row in manifest.summary:
        assert row.p05 <= row.median_vp <= row.p95
    # total variation of Brownian motion grows like sqrt(n)
    assert manifest.classifications[1.0] is Classification.DIVERGING
    assert manifest.bounds is not None
    assert manifest.bounds.p == 2.5


def test_run_sharpness_is_reproducible(tmp_path):
    config = _small_sharpness(tmp_path, meshes=(33, 65), n_paths=5)
    first = run_sharpness(config)
    second = run_sharpness(ExperimentConfig(**{**config.__dict__, "workers": 1}))
    assert first.fingerprint() == second.fingerprint()


ACCEPTANCE_MESHES = tuple(2**k + 1 for k in range(10, 17))


@pytest.mark.slow
def test_sharpness_for_stable_motion(tmp_path):
    # total variation grows like n^(1 - 1/alpha), only a factor of 2 over this ladder
    rough = ExperimentConfig(
        spec=ProcessSpec(alpha=1.2),
        meshes=ACCEPTANCE_MESHES,
        p_grid=(1.0,),
        n_paths=400,
        diverge_factor=1.6,
        out=tmp_path / "rough",
        workers=4,
    )
    assert run_sharpness(rough).classifications[1.0] is Classification.DIVERGING

    smooth = ExperimentConfig(
        spec=ProcessSpec(alpha=1.2),
        meshes=ACCEPTANCE_MESHES,
        p_grid=(1.5,),
        n_paths=100,
        out=tmp_path / "smooth",
        workers=4,
    )
    assert run_sharpness(smooth).classifications[1.5] is Classification.STABILIZING


@pytest.mark.slow
def test_sharpness_for_brownian_motion(tmp_path):
    config = ExperimentConfig(
        spec=ProcessSpec(alpha=2.0),
        meshes=ACCEPTANCE_MESHES,
        p_grid=(1.9, 2.5),
        n_paths=100,
        out=tmp_path,
        workers=4,
    )
    manifest = run_sharpness(config)
    medians = [row.median_vp for row in sorted(manifest.summary, key=lambda row: row.mesh_n) if row.p == 1.9]
    # just below p = 2 the medians grow by about 1.5 over this ladder, short of the default factor of 2
    assert medians[-1] >= 1.25 * medians[0]
    assert manifest.classifications[2.5] is Classification.STABILIZING


@pytest.mark.slow
def test_bound_validation_at_acceptance_scale(tmp_path):
    config = ExperimentConfig(
        spec=ProcessSpec(alpha=2.0),
        p_grid=(2.5,),
        n_paths=10000,
        validation_mesh=2**12 + 1,
        levels=(2, 3, 4),
        j_values=(1, 2, 3),
        out=tmp_path,
        workers=4,
    )
    manifest = run_bound_validation(config)
    checked = [c for c in manifest.checks if c.name in {"stopping_time_tail", "band_count_mean"}]
    assert len(checked) == 9 + 3
    assert all(c.passed for c in checked), [c.to_dict() for c in checked if not c.passed]
    assert next(c for c in manifest.checks if c.name == "dyadic_decomposition").passed


@pytest.mark.slow
def test_run_membership_brownian(tmp_path):
    manifest = run_membership(ExperimentConfig(spec=ProcessSpec(alpha=2.0), out=tmp_path, workers=4))
    assert 1.85 <= manifest.kernel_fit.pstar <= 2.15


def test_run_membership_cauchy(tmp_path):
    config = ExperimentConfig(spec=ProcessSpec(alpha=1.0), tail_samples=20000, seed=SEED, out=tmp_path, workers=2)
    manifest = run_membership(config)
    assert manifest.kind is RunKind.MEMBERSHIP
    assert len(manifest.tail_grid) == len(config.h_grid) * len(config.a_grid)
    fit = manifest.kernel_fit
    assert fit.envelope is not None
    assert 0.8 <= fit.pstar <= 1.25
    assert manifest.bounds is not None
    assert manifest.bounds.envelope == fit.envelope


def test_run_membership_without_tail_mass(tmp_path):
    config = ExperimentConfig(
        spec=ProcessSpec(alpha=2.0),
        h_grid=(1e-4, 2e-4, 4e-4),
        a_grid=(1.0, 2.0, 4.0),
        tail_samples=1000,
        out=tmp_path,
        workers=1,
    )
    manifest = run_membership(config)
    assert manifest.kernel_fit.envelope is None
    assert manifest.bounds is None
    assert manifest.warnings


def test_run_bound_validation_passes(tmp_path):
    manifest = run_bound_validation(_small_validation(tmp_path))
    names = {check.name for check in manifest.checks}
    assert names == {
        "stopping_time_tail",
        "band_count_mean",
        "dyadic_decomposition",
        "pvar_tail_chain",
        "maximal_inequality",
    }
    assert len([c for c in manifest.checks if c.name == "stopping_time_tail"]) == 4
    assert len([c for c in manifest.checks if c.name == "pvar_tail_chain"]) == 2
    assert manifest.passed, [c.to_dict() for c in manifest.failed_checks]
    # M = 0.01 leaves no room under the one-half precondition
    assert any("h=0.1, M=0.01" in warning for warning in manifest.warnings)


def test_run_tail_chain_bound_terms():
    env = ClassEnvelope(K=1.0, beta=1.0, gamma=1.0, a0=1.0)
    # (v_p, (2 Mhat)^p, nu_0) per path
    chain = [(5.0, 0.1, 0), (50.0, 10.0, 1), (0.5, 0.0, 0), (200.0, 1.0, 20)]
    low, high = run_tail_chain(chain, env, 1.0, 2.0, (10.0, 10000.0))
    c1 = tail_constant_C1(env, 1.0, 2.0)

    assert low.parameters == {"p": 2.0, "N": 10.0}
    assert low.observed == 0.5
    assert low.bound == pytest.approx(c1 / 10.0 + 0.25 + 0.25)
    assert high.observed == 0.0
    assert high.bound == pytest.approx(c1 / 10000.0)
    assert low.passed and high.passed

    with pytest.raises(ConfigError):
        run_tail_chain([], env, 1.0, 2.0, (10.0,))


def test_run_bound_validation_needs_envelope(tmp_path):
    with pytest.raises(ConfigError):
        run_bound_validation(_small_validation(tmp_path, spec=ProcessSpec(alpha=1.5)))


# =============================================================================
# Artifacts
# =============================================================================

def test_emit_report_csv(tmp_path):
    manifest = run_sharpness(_small_sharpness(tmp_path, meshes=(33, 65), n_paths=5))
    written = emit_report(manifest, tmp_path / "a")
    assert sorted(p.name for p in written) == ["bounds.json", "manifest.json", "summary.csv", "tailgrid.csv"]
    assert (tmp_path / "a" / "tailgrid.csv").read_text() == "h,a,alpha_hat,n,ci_low,ci_high\n"
    summary = (tmp_path / "a" / "summary.csv").read_text().splitlines()
    assert summary[0] == "mesh_n,p,median_vp,p05,p95,classification"
    assert len(summary) == 1 + 2 * 2

    # same manifest, same bytes
    emit_report(manifest, tmp_path / "b")
    for name in ("summary.csv", "tailgrid.csv", "bounds.json"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_emit_report_json_and_checks(tmp_path):
    manifest = run_bound_validation(_small_validation(tmp_path, ottaviani_M=(1.0,), n_paths=10))
    written = emit_report(manifest, tmp_path / "json", fmt="json")
    assert sorted(p.name for p in written) == ["bounds.json", "manifest.json"]
    written = emit_report(manifest, tmp_path / "csv")
    assert "checks.csv" in {p.name for p in written}
    header = (tmp_path / "csv" / "checks.csv").read_text().splitlines()[0]
    assert header == "name,parameters,observed,bound,slack,margin,passed"
    with pytest.raises(DomainError):
        emit_report(manifest, tmp_path, fmt="xml")


def test_bounds_json_is_null_without_envelope(tmp_path):
    manifest = RunManifest(kind=RunKind.MEMBERSHIP, config={})
    emit_report(manifest, tmp_path)
    assert json.loads((tmp_path / "bounds.json").read_text()) is None


def test_load_manifest_round_trip(tmp_path):
    manifest = run_sharpness(_small_sharpness(tmp_path, meshes=(33, 65), n_paths=5))
    emit_report(manifest, tmp_path / "run")
    loaded = load_manifest(tmp_path / "run")
    assert loaded.fingerprint() == manifest.fingerprint()
    assert loaded.classifications == manifest.classifications
    assert load_manifest(tmp_path / "run" / "manifest.json").kind is RunKind.SHARPNESS


def test_load_manifest_errors(tmp_path):
    with pytest.raises(ReportError):
        load_manifest(tmp_path / "nowhere")
    bad = Path(tmp_path / "manifest.json")
    bad.write_text("{}", encoding="utf-8")
    with pytest.raises(ReportError):
        load_manifest(tmp_path)


def test_fingerprint_ignores_wall_clock():
    manifest = RunManifest(kind=RunKind.SHARPNESS, config={"seed": 1})
    before = manifest.fingerprint()
    manifest.wall_clock = 12.5
    assert manifest.fingerprint() == before
    manifest.warnings.append("changed")
    assert manifest.fingerprint() != before
