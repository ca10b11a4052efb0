"""Loading and schema-checking of the dimerdyn CSV/manifest interface."""
from __future__ import annotations

import csv
import hashlib
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np


class SchemaError(ValueError):
    """CSV does not match the expected column schema (or is empty)."""


@dataclass(frozen=True)
class Dataset:
    """One preset's data: named columns, source digest and manifest params."""

    preset: str
    columns: dict               # name -> np.ndarray (float, NaN for NA) or list[str]
    digest: str                 # sha256 of the source CSV
    params: dict = field(default_factory=dict)
    path: Path | None = None

    def col(self, name: str) -> np.ndarray:
        return self.columns[name]


def _parse_cell(text: str):
    if text == "NA":
        return math.nan
    return text


def load_dataset(data_dir: str | Path, preset: str,
                 expected_columns: list[str] | None = None) -> Dataset:
    """Read `<preset>.csv` (+ manifest.json if present) from data_dir.

    Raises SchemaError with an explicit column diff when the header does
    not match `expected_columns`, and on empty files.  When a manifest is
    present, the CSV digest is verified against it.
    """
    data_dir = Path(data_dir)
    csv_path = data_dir / f"{preset}.csv"
    if not csv_path.is_file():
        raise SchemaError(f"missing data file {csv_path}")
    raw = csv_path.read_bytes()
    if not raw.strip():
        raise SchemaError(f"{csv_path} is empty")
    digest = hashlib.sha256(raw).hexdigest()

    params: dict = {}
    manifest_path = data_dir / "manifest.json"
    if manifest_path.is_file():
        manifest = json.loads(manifest_path.read_text(encoding="utf-8"))
        recorded = manifest.get("files", {}).get(csv_path.name)
        if recorded is not None and recorded != digest:
            raise SchemaError(
                f"{csv_path} digest {digest[:12]}... does not match the "
                f"manifest entry {recorded[:12]}...")
        params = manifest.get("params", {})

    reader = csv.reader(raw.decode("utf-8").splitlines())
    header = next(reader)
    if expected_columns is not None and header != expected_columns:
        missing = [c for c in expected_columns if c not in header]
        extra = [c for c in header if c not in expected_columns]
        raise SchemaError(
            f"{csv_path}: column mismatch; missing {missing or 'none'}, "
            f"unexpected {extra or 'none'}")
    rows = list(reader)
    if not rows:
        raise SchemaError(f"{csv_path} has a header but no data rows")

    columns: dict = {}
    for i, name in enumerate(header):
        cells = [_parse_cell(r[i]) for r in rows]
        try:
            columns[name] = np.array(
                [math.nan if isinstance(c, float) and math.isnan(c)
                 else float(c) for c in cells])
        except (TypeError, ValueError):
            columns[name] = cells    # non-numeric column (regime labels)
    return Dataset(preset=preset, columns=columns, digest=digest,
                   params=params, path=csv_path)
