"""
Command-line entry point: `pvarlab <command> [options]`.

Exit codes: 0 on success, 1 when a validation check fails, 2 on
configuration, input or I/O errors.
"""

import argparse
import json
import logging
import sys
from pathlib import Path

from bounds.report import build_bound_report, write_bounds_json
from config.experiment import ExperimentConfig, load_config
from config.settings import DEBUG, HOST, PORT, configure_logging
from core.errors import ConfigError, LabError, format_error
from core.models import ClassEnvelope
from experiments.models import RunManifest
from experiments.report import FORMATS, emit_report, load_manifest
from experiments.runs import default_report_p, run_bound_validation, run_membership, run_sharpness
from kernel.fit import fit_envelope
from kernel.models import Verdict
from kernel.tail import analytic_envelope, read_tailgrid_csv
from pvar.exact import pvar_exact
from pvar.profile import dyadic_upper_bound
from simulate.models import MeshSpec, ProcessSpec
from simulate.paths import read_path_csv, simulate_path, write_path_csv

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_ERROR = 2


def _emit_json(data) -> None:
    sys.stdout.write(json.dumps(data, sort_keys=True, indent=2) + "\n")


def _finish_run(manifest: RunManifest, config: ExperimentConfig, fmt: str) -> None:
    written = emit_report(manifest, config.out, fmt)
    for path in written:
        print(f"✅ Wrote {path}")
    for warning in manifest.warnings:
        print(f"⚠️ {warning}")


def cmd_simulate(args, config: ExperimentConfig) -> int:
    spec = config.spec
    if args.alpha is not None:
        spec = ProcessSpec(alpha=args.alpha, c=args.c if args.c is not None else spec.c, T=spec.T)
    path = simulate_path(spec, MeshSpec(args.n), config.seed, args.index)
    if args.format == "json":
        _emit_json({"spec": spec.to_dict(), "seed": config.seed, "index": args.index, **path.to_dict()})
    else:
        target = write_path_csv(path, Path(config.out) / f"path_{args.index}.csv")
        print(f"✅ Wrote {len(path)} samples to {target}")
    return EXIT_OK


def cmd_pvar(args, config: ExperimentConfig) -> int:
    path = read_path_csv(args.input)
    p_values = args.p or list(config.p_grid)
    a0 = args.a0 if args.a0 is not None else config.a0
    results = []
    for p in p_values:
        profile = dyadic_upper_bound(path, p, a0)
        results.append({"p": p, "pvar": pvar_exact(path, p), "profile": profile.to_dict()})
    if args.format == "json":
        _emit_json({"input": str(args.input), "points": len(path), "results": results})
    else:
        for entry in results:
            print(
                f"p={entry['p']:g}  v_p={entry['pvar']:.10g}  "
                f"dyadic bound={entry['profile']['dyadic_bound']:.10g}"
            )
    return EXIT_OK


def cmd_fit_kernel(args, config: ExperimentConfig) -> int:
    if args.grid is not None:
        fit = fit_envelope(read_tailgrid_csv(args.grid), config.spec.T)
        if args.format == "json":
            _emit_json(fit.to_dict())
        else:
            print(f"Verdict: {fit.verdict.value}  pstar: {fit.pstar}  residual: {fit.residual:.4g}")
    else:
        manifest = run_membership(config)
        _finish_run(manifest, config, args.format)
        fit = manifest.kernel_fit
        print(f"Verdict: {fit.verdict.value}  pstar: {fit.pstar}")
    if fit.verdict is Verdict.REJECTED:
        print("❌ Fitted beta fell below 1; the grid does not fit the class envelope")
        return EXIT_FAILED
    return EXIT_OK


def cmd_bounds(args, config: ExperimentConfig) -> int:
    given = [args.K, args.beta, args.gamma]
    if any(v is not None for v in given):
        if any(v is None for v in given):
            raise ConfigError("--K, --beta and --gamma go together")
        envelope = ClassEnvelope(K=args.K, beta=args.beta, gamma=args.gamma, a0=args.a0 or config.a0)
    else:
        envelope = config.envelope or analytic_envelope(config.spec, config.a0)
    if envelope is None:
        raise ConfigError("no envelope: pass --K, --beta and --gamma or set them in the config")

    p = args.p if args.p is not None else default_report_p(envelope, config.p_grid)
    report = build_bound_report(envelope, config.spec.T, config.levels, config.j_values, p)
    if args.format == "json":
        _emit_json(report.to_dict())
    else:
        target = write_bounds_json(report, Path(config.out) / "bounds.json")
        print(f"✅ Wrote {target}")
    return EXIT_OK


def cmd_sharpness(args, config: ExperimentConfig) -> int:
    manifest = run_sharpness(config)
    _finish_run(manifest, config, args.format)
    for p, label in sorted(manifest.classifications.items()):
        print(f"p={p:g}: {label.value}")
    return EXIT_OK


def cmd_validate(args, config: ExperimentConfig) -> int:
    manifest = run_bound_validation(config)
    _finish_run(manifest, config, args.format)
    failed = manifest.failed_checks
    if failed:
        for check in failed:
            print(f"❌ {check.name} {check.parameters}: observed {check.observed:.5g} > {check.bound:.5g} + {check.slack:.3g}")
        return EXIT_FAILED
    print(f"✅ All {len(manifest.checks)} checks passed")
    return EXIT_OK


def cmd_report(args, config: ExperimentConfig) -> int:
    manifest = load_manifest(args.manifest)
    out = Path(args.out) if args.out else Path(args.manifest)
    if out.suffix == ".json":
        out = out.parent
    for path in emit_report(manifest, out, args.format):
        print(f"✅ Wrote {path}")
    return EXIT_FAILED if not manifest.passed else EXIT_OK


def cmd_serve(args, config: ExperimentConfig) -> int:
    import uvicorn

    uvicorn.run("app.fast_api_app:app", host=args.host, port=args.port, reload=DEBUG)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="flat key = value config file")
    common.add_argument("--seed", type=int, help="64-bit seed (overrides the config)")
    common.add_argument("--out", help="output directory (overrides the config)")
    common.add_argument("--format", choices=FORMATS, default="csv")
    common.add_argument("--log-level", type=str.upper, choices=["DEBUG", "INFO", "WARNING", "ERROR"])

    parser = argparse.ArgumentParser(prog="pvarlab", description="P-variation laboratory")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", parents=[common], help="simulate one sample path")
    p.add_argument("--alpha", type=float)
    p.add_argument("--c", type=float)
    p.add_argument("--n", type=int, default=1025, help="mesh points")
    p.add_argument("--index", type=int, default=0, help="path index within the ensemble")
    p.set_defaults(handler=cmd_simulate)

    p = sub.add_parser("pvar", parents=[common], help="p-variation of a t,x path CSV")
    p.add_argument("input")
    p.add_argument("--p", type=float, action="append")
    p.add_argument("--a0", type=float)
    p.set_defaults(handler=cmd_pvar)

    p = sub.add_parser("fit-kernel", parents=[common], help="estimate and fit the class envelope")
    p.add_argument("--grid", help="fit an existing tailgrid.csv instead of sampling")
    p.set_defaults(handler=cmd_fit_kernel)

    p = sub.add_parser("bounds", parents=[common], help="evaluate the closed-form bounds")
    p.add_argument("--K", type=float)
    p.add_argument("--beta", type=float)
    p.add_argument("--gamma", type=float)
    p.add_argument("--a0", type=float)
    p.add_argument("--p", type=float)
    p.set_defaults(handler=cmd_bounds)

    p = sub.add_parser("sharpness", parents=[common], help="median p-variation over a mesh ladder")
    p.set_defaults(handler=cmd_sharpness)

    p = sub.add_parser("validate", parents=[common], help="Monte Carlo checks of the bounds")
    p.set_defaults(handler=cmd_validate)

    p = sub.add_parser("report", parents=[common], help="re-emit the files of a saved manifest")
    p.add_argument("manifest", help="manifest.json or the directory holding it")
    p.set_defaults(handler=cmd_report)

    p = sub.add_parser("serve", parents=[common], help="serve the HTTP API")
    p.add_argument("--host", default=HOST)
    p.add_argument("--port", type=int, default=PORT)
    p.set_defaults(handler=cmd_serve)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.log_level)
    try:
        config = load_config(args.config, seed=args.seed, out=args.out if args.command != "report" else None)
        return args.handler(args, config)
    except (LabError, OSError) as e:
        body = format_error(e, context=f"({args.command})")
        print(f"❌ {body['message']} {body['technical_details']}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
