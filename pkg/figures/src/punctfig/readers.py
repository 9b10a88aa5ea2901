"""Readers for the delimited outputs of the analysis pipeline.

These parse the documented file formats only; they do not import the
analysis package.  A table missing an expected column fails with an error
that names the column.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path


class SchemaError(ValueError):
    """An input file does not match its documented schema."""


def read_table(path: str | Path, required: list[str]) -> list[dict[str, str]]:
    path = Path(path)
    with path.open("r", encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        for column in required:
            if column not in header:
                raise SchemaError(f"{path}: missing column {column!r}")
        return list(reader)


def _floats(rows: list[dict[str, str]], columns: list[str]) -> list[dict]:
    out = []
    for row in rows:
        rec = dict(row)
        for c in columns:
            rec[c] = float(row[c]) if row[c] != "" else None
        out.append(rec)
    return out


def read_ranks(path: str | Path) -> list[dict]:
    rows = read_table(path, ["rank", "surface", "kind", "frequency", "probability"])
    out = _floats(rows, ["probability"])
    for rec in out:
        rec["rank"] = int(rec["rank"])
        rec["frequency"] = int(rec["frequency"])
    return out


def read_fit(path: str | Path) -> dict:
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    for key in ("alpha", "c", "amplitude", "r_min", "r_max"):
        if key not in data:
            raise SchemaError(f"{path}: missing key {key!r}")
    return data


SCATTER_COLUMNS = [
    "surface", "count", "aspl_mean", "aspl_stderr", "lcc_mean", "lcc_stderr",
    "null_count", "aspl_null_mean", "aspl_null_stderr", "lcc_null_mean",
    "lcc_null_stderr", "aspl_ratio", "lcc_ratio",
]


def read_scatter(path: str | Path) -> list[dict]:
    rows = read_table(path, SCATTER_COLUMNS)
    out = _floats(rows, [c for c in SCATTER_COLUMNS if c not in ("surface", "count", "null_count")])
    for rec in out:
        rec["count"] = int(rec["count"])
        rec["null_count"] = int(rec["null_count"])
    return out


REMOVAL_COLUMNS = [
    "rank", "surface", "n", "e", "aspl", "aspl_over_log_n", "clustering",
    "assortativity", "aspl_null", "clustering_null", "assortativity_null",
    "aspl_ratio", "clustering_ratio", "assortativity_ratio", "disconnected",
]


def read_removal(path: str | Path) -> list[dict]:
    rows = read_table(path, REMOVAL_COLUMNS)
    numeric = [c for c in REMOVAL_COLUMNS if c not in ("rank", "surface", "n", "e", "disconnected")]
    out = _floats(rows, numeric)
    for rec in out:
        rec["rank"] = int(rec["rank"])
        rec["n"] = int(rec["n"])
        rec["e"] = int(rec["e"])
    return out
