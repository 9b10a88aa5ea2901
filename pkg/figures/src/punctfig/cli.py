"""Render figures from a batch spec file.

The spec file is JSON: either a list of figure objects or
``{"figures": [...], "out_dir": "..."}``.  Each figure object carries
``kind``, ``inputs`` (role -> file path), ``out``, and optionally
``labels``, ``xlim``, ``ylim``, ``metric``, ``title``.

Exit codes: 0 success, 1 bad spec, 2 missing or malformed data files.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .readers import SchemaError
from .render import load_spec, render_batch


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="punctnet-render", description=__doc__)
    parser.add_argument("spec", help="figure-spec JSON file")
    parser.add_argument("--out-dir", default=None, help="directory for relative output paths")
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1

    spec_path = Path(args.spec)
    try:
        data = json.loads(spec_path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        print(f"punctnet-render: cannot read spec: {exc}", file=sys.stderr)
        return 1

    entries = data["figures"] if isinstance(data, dict) else data
    out_dir = Path(args.out_dir or (data.get("out_dir", ".") if isinstance(data, dict) else "."))
    base = spec_path.parent

    try:
        specs = []
        for entry in entries:
            entry = dict(entry)
            entry["inputs"] = {k: str(base / v) for k, v in entry.get("inputs", {}).items()}
            entry["out"] = str(out_dir / entry["out"])
            specs.append(load_spec(entry))
    except (KeyError, TypeError) as exc:
        print(f"punctnet-render: malformed figure spec: {exc}", file=sys.stderr)
        return 1
    except SchemaError as exc:
        print(f"punctnet-render: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"punctnet-render: {exc}", file=sys.stderr)
        return 2

    try:
        results = render_batch(specs)
    except (SchemaError, OSError, ValueError) as exc:
        print(f"punctnet-render: {exc}", file=sys.stderr)
        return 2

    for out in sorted(results):
        print(f"wrote {out}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
