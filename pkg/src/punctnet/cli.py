"""Command-line pipelines: tokenize, zipf, network, experiment.

Every command writes its data files plus a ``run_metadata.json`` recording
inputs, the resolved configuration and its hash, the seed, versions, and
timings.  Data outputs are byte-reproducible for a fixed seed; the
metadata file is not (it carries durations).

Exit codes: 0 success, 1 usage or configuration error, 2 data error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .corpus import (
    Corpus,
    default_cleaning_config,
    load_cleaning_config,
    merge_corpora,
    read_text_file,
    read_tokens,
    tokenize,
    write_tokens,
    clean_text,
)
from .graph import (
    build_graph,
    global_metrics,
    heaps_curve,
    write_edge_list,
    write_node_metrics,
)
from .rankstats import (
    build_rank_table,
    compare_c,
    fit_power_law,
    fit_zipf_mandelbrot,
    write_fit_json,
    write_rank_csv,
)
from .experiment import (
    ManifestError,
    RNG_ALGORITHM,
    load_manifest,
    run_experiment,
    transform_corpus,
)

USAGE_ERROR = 1
DATA_ERROR = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # exit 1 on usage errors, not argparse's 2
        self.print_usage(sys.stderr)
        raise SystemExit((USAGE_ERROR, f"{self.prog}: error: {message}"))


def _sha256_of(obj) -> str:
    return hashlib.sha256(json.dumps(obj, sort_keys=True, default=str).encode()).hexdigest()


def _write_metadata(out_dir: Path, command: str, inputs: list[str], config: dict,
                    seed, started: float, outputs: list[str]) -> None:
    import numba

    meta = {
        "command": command,
        "inputs": inputs,
        "config": config,
        "config_hash": _sha256_of(config),
        "seed": seed,
        "rng_algorithm": RNG_ALGORITHM,
        "duration_seconds": round(time.perf_counter() - started, 3),
        "versions": {
            "punctnet": __version__,
            "python": sys.version.split()[0],
            "numpy": np.__version__,
            "numba": numba.__version__,
        },
        "outputs": sorted(outputs),
    }
    (out_dir / "run_metadata.json").write_text(
        json.dumps(meta, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )


def _load_corpus(paths: list[str]) -> Corpus:
    parts = [read_tokens(p) for p in paths]
    return parts[0] if len(parts) == 1 else merge_corpora(parts)


def cmd_tokenize(args: argparse.Namespace) -> int:
    started = time.perf_counter()
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    if args.cleaning_config:
        try:
            cfg = load_cleaning_config(args.cleaning_config)
        except (OSError, ValueError) as exc:
            raise ManifestError(f"cleaning config {args.cleaning_config}: {exc}") from exc
    else:
        cfg = default_cleaning_config(args.language)
    if args.keep_dashes:
        cfg.strip_dashes = False

    outputs: list[str] = []
    corpora = []
    for path in args.inputs:
        raw = read_text_file(path)
        corpus = tokenize(clean_text(raw, cfg), title=Path(path).stem, language=args.language)
        token_path = out_dir / (Path(path).stem + ".tokens")
        write_tokens(corpus, token_path)
        outputs += [token_path.name, token_path.name + ".meta.json"]
        corpora.append(corpus)
    merged = merge_corpora(corpora)
    write_tokens(merged, out_dir / "corpus.tokens")
    outputs += ["corpus.tokens", "corpus.tokens.meta.json"]

    config = {
        "language": args.language,
        "cleaning_config": args.cleaning_config,
        "keep_dashes": args.keep_dashes,
    }
    _write_metadata(out_dir, "tokenize", list(args.inputs), config, None, started, outputs)
    print(f"tokenize: {len(merged)} tokens from {len(args.inputs)} file(s) -> {out_dir}")
    return 0


def cmd_zipf(args: argparse.Namespace) -> int:
    started = time.perf_counter()
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    corpus = _load_corpus(args.corpus)

    table = build_rank_table(corpus, include_punct=args.include_punct, fs_mode=args.fs_mode)
    write_rank_csv(table, out_dir / "ranks.csv")

    corpus_label = "+".join(Path(p).name for p in args.corpus)
    with_punct = build_rank_table(corpus, include_punct=True, fs_mode=args.fs_mode)
    words_only = build_rank_table(corpus, include_punct=False, fs_mode=args.fs_mode)
    fit_with = fit_zipf_mandelbrot(with_punct, label=corpus_label)
    fit_without = fit_zipf_mandelbrot(words_only, label=corpus_label)
    write_fit_json(fit_with, out_dir / "fit_with_punct.json")
    write_fit_json(fit_without, out_dir / "fit_without_punct.json")

    r_lo, r_hi = args.power_range
    power = fit_power_law(table, (r_lo, min(r_hi, len(table))), label=corpus_label)
    write_fit_json(power, out_dir / "fit_power_law.json")

    # Tail sensitivity: the same comparison restricted to the top decade span.
    head = max(20, len(with_punct) // 10)
    cmp_full = compare_c(fit_with, fit_without)
    fit_with_head = fit_zipf_mandelbrot(with_punct, (1, head), label=corpus_label)
    fit_without_head = fit_zipf_mandelbrot(words_only, (1, min(head, len(words_only))), label=corpus_label)
    summary = {
        "delta_c": cmp_full.delta_c,
        "c_with_punct": fit_with.c,
        "c_without_punct": fit_without.c,
        "power_law_alpha": power.alpha,
        "head_range": [1, head],
        "head_delta_c": fit_with_head.c - fit_without_head.c,
        "head_c_with_punct": fit_with_head.c,
        "head_c_without_punct": fit_without_head.c,
    }
    (out_dir / "summary.json").write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n", encoding="utf-8")

    config = {
        "include_punct": args.include_punct,
        "fs_mode": args.fs_mode,
        "power_range": list(args.power_range),
    }
    outputs = ["ranks.csv", "fit_with_punct.json", "fit_without_punct.json",
               "fit_power_law.json", "summary.json"]
    _write_metadata(out_dir, "zipf", list(args.corpus), config, None, started, outputs)
    print(f"zipf: {len(table)} ranked items, delta_c={cmp_full.delta_c:.3f} -> {out_dir}")
    return 0


def cmd_network(args: argparse.Namespace) -> int:
    started = time.perf_counter()
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    corpus = _load_corpus(args.corpus)
    corpus = transform_corpus(corpus, include_punct=args.include_punct, fs_mode=args.fs_mode)

    graph = build_graph(corpus, looped=args.looped)
    write_edge_list(graph, out_dir / "edge_list.tsv")
    metrics = global_metrics(graph, exact_budget=args.exact_budget, sample_seed=args.seed)
    (out_dir / "global_metrics.json").write_text(
        json.dumps(metrics.to_json_dict(), indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )

    table = build_rank_table(corpus)
    write_node_metrics(graph, table.top_surfaces(10), out_dir / "node_metrics.json")

    length = len(corpus)
    grid = np.geomspace(min(100, length), length, args.heaps_points)
    sizes = np.unique(np.clip(grid.astype(int), 1, length))
    curve = heaps_curve(corpus, [int(s) for s in sizes])
    with (out_dir / "heaps.csv").open("w", encoding="utf-8") as fh:
        fh.write("size,vocabulary\n")
        for s, n in curve:
            fh.write(f"{s},{n}\n")

    config = {
        "include_punct": args.include_punct,
        "fs_mode": args.fs_mode,
        "looped": args.looped,
        "exact_budget": args.exact_budget,
        "heaps_points": args.heaps_points,
    }
    outputs = ["edge_list.tsv", "global_metrics.json", "node_metrics.json", "heaps.csv"]
    _write_metadata(out_dir, "network", list(args.corpus), config, args.seed, started, outputs)
    print(f"network: n={graph.n} e={graph.e} aspl={metrics.aspl:.3f} -> {out_dir}")
    return 0


def cmd_experiment(args: argparse.Namespace) -> int:
    started = time.perf_counter()
    manifest = load_manifest(args.config)
    if args.seed is not None:
        manifest.seed = args.seed
    if args.out is not None:
        manifest.out_dir = args.out
    if args.sizes is not None:
        manifest.sizes = tuple(args.sizes)
    if args.realizations is not None:
        manifest.realizations = args.realizations
    if args.include_punct is not None:
        manifest.include_punct = args.include_punct
    if args.fs_mode is not None:
        manifest.fs_mode = args.fs_mode
    if args.workers is not None:
        manifest.workers = args.workers
    if manifest.seed < 0:
        raise ManifestError("seed must be non-negative")

    out_dir = Path(manifest.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    info = run_experiment(manifest)

    config = {k: v for k, v in vars(manifest).items() if k != "extra"}
    config["sizes"] = list(manifest.sizes)
    config["extra_targets"] = list(manifest.extra_targets)
    _write_metadata(out_dir, "experiment", list(manifest.corpus_files), config,
                    manifest.seed, started, info["outputs"])
    print(f"experiment: seed={manifest.seed} -> {out_dir} ({', '.join(sorted(info['outputs']))})")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="punctnet", description=__doc__)
    parser.add_argument("--version", action="version", version=f"punctnet {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tokenize", help="clean and tokenize raw text files")
    p.add_argument("inputs", nargs="+", help="UTF-8 text files")
    p.add_argument("--language", default="en")
    p.add_argument("--cleaning-config", default=None, help="JSON cleaning config")
    p.add_argument("--keep-dashes", action="store_true", help="keep dashes instead of stripping")
    p.add_argument("--config", default=None, help="JSON file with defaults for these flags")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_tokenize)

    p = sub.add_parser("zipf", help="rank-frequency table and Zipf/Zipf-Mandelbrot fits")
    p.add_argument("corpus", nargs="+", help="token files (merged in order)")
    punct = p.add_mutually_exclusive_group()
    punct.add_argument("--include-punct", dest="include_punct", action="store_true", default=True)
    punct.add_argument("--no-punct", dest="include_punct", action="store_false")
    p.add_argument("--fs-mode", action="store_true", help="aggregate sentence enders into #fs")
    p.add_argument("--power-range", nargs=2, type=int, default=(10, 10_000), metavar=("MIN", "MAX"))
    p.add_argument("--config", default=None)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_zipf)

    p = sub.add_parser("network", help="adjacency network, global metrics, vocabulary growth")
    p.add_argument("corpus", nargs="+")
    punct = p.add_mutually_exclusive_group()
    punct.add_argument("--include-punct", dest="include_punct", action="store_true", default=True)
    punct.add_argument("--no-punct", dest="include_punct", action="store_false")
    p.add_argument("--fs-mode", action="store_true")
    p.add_argument("--looped", action="store_true", help="connect the last token to the first")
    p.add_argument("--seed", type=int, default=0, help="seed for sampled ASPL sources")
    p.add_argument("--exact-budget", type=int, default=20_000)
    p.add_argument("--heaps-points", type=int, default=25)
    p.add_argument("--config", default=None)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_network)

    p = sub.add_parser("experiment", help="sampling, null-model, and removal experiments")
    p.add_argument("--config", required=True, help="experiment manifest (JSON)")
    p.add_argument("--seed", type=int, default=None, help="override the manifest seed")
    p.add_argument("--out", default=None, help="override the manifest output directory")
    p.add_argument("--sizes", nargs="+", type=int, default=None, help="override substring sizes")
    p.add_argument("--realizations", type=int, default=None, help="override samples per size")
    punct = p.add_mutually_exclusive_group()
    punct.add_argument("--include-punct", dest="include_punct", action="store_true", default=None)
    punct.add_argument("--no-punct", dest="include_punct", action="store_false")
    p.add_argument("--fs-mode", dest="fs_mode", action="store_true", default=None)
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(func=cmd_experiment)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        if isinstance(exc.code, tuple):
            code, message = exc.code
            print(message, file=sys.stderr)
            return code
        return 0 if exc.code in (0, None) else USAGE_ERROR

    if getattr(args, "config", None) and args.command != "experiment":
        try:
            defaults = json.loads(Path(args.config).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            print(f"punctnet: bad --config file: {exc}", file=sys.stderr)
            return USAGE_ERROR
        parser.set_defaults(**defaults)
        try:
            args = parser.parse_args(argv)
        except SystemExit:
            return USAGE_ERROR

    try:
        return args.func(args)
    except ManifestError as exc:
        print(f"punctnet: configuration error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except (ValueError, KeyError, OSError) as exc:
        print(f"punctnet: data error: {exc}", file=sys.stderr)
        return DATA_ERROR


if __name__ == "__main__":
    raise SystemExit(main())
