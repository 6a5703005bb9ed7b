"""
Run artifacts: summary.csv, tailgrid.csv, checks.csv, bounds.json and
manifest.json. Output bytes depend only on the manifest.
"""

import json
import logging
from pathlib import Path

import pandas as pd

from core.errors import DomainError, ReportError
from experiments.models import CHECK_COLUMNS, SUMMARY_COLUMNS, RunManifest
from kernel.models import TailGrid

logger = logging.getLogger(__name__)

FORMATS = ("csv", "json")
_CSV_OPTIONS = {"index": False, "float_format": "%.17g", "lineterminator": "\n"}


def _dump_json(data) -> str:
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


def summary_frame(manifest: RunManifest) -> pd.DataFrame:
    return pd.DataFrame([row.to_dict() for row in manifest.summary], columns=SUMMARY_COLUMNS)


def checks_frame(manifest: RunManifest) -> pd.DataFrame:
    rows = []
    for check in manifest.checks:
        row = check.to_dict()
        row["parameters"] = json.dumps(row["parameters"], sort_keys=True)
        rows.append(row)
    return pd.DataFrame(rows, columns=CHECK_COLUMNS)


def emit_report(manifest: RunManifest, out_dir: str | Path, fmt: str = "csv") -> list[Path]:
    """Write the run artifacts into out_dir and return the written paths.

    The csv format writes every table; the json format writes only
    manifest.json and bounds.json, the manifest carrying the tables.
    """
    if fmt not in FORMATS:
        raise DomainError(f"report format must be one of {FORMATS}, got {fmt!r}")
    out_dir = Path(out_dir)
    written = []
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        if fmt == "csv":
            tables = {
                "summary.csv": summary_frame(manifest),
                "tailgrid.csv": (manifest.tail_grid or TailGrid()).to_frame(),
            }
            if manifest.checks:
                tables["checks.csv"] = checks_frame(manifest)
            for name, frame in tables.items():
                target = out_dir / name
                frame.to_csv(target, **_CSV_OPTIONS)
                written.append(target)

        # null when no envelope was available for the run
        bounds = None if manifest.bounds is None else manifest.bounds.to_dict()
        for name, data in (("bounds.json", bounds), ("manifest.json", manifest.to_dict())):
            target = out_dir / name
            target.write_text(_dump_json(data), encoding="utf-8")
            written.append(target)
    except OSError as e:
        raise ReportError(f"could not write report to {out_dir}: {e}") from e

    logger.info("Wrote %d report files to %s", len(written), out_dir)
    return written


def load_manifest(path: str | Path) -> RunManifest:
    """Read manifest.json (or the directory holding it) back into a RunManifest."""
    path = Path(path)
    if path.is_dir():
        path = path / "manifest.json"
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
        return RunManifest.from_dict(data)
    except (OSError, ValueError, KeyError, TypeError) as e:
        raise ReportError(f"could not read manifest from {path}: {e}") from e
