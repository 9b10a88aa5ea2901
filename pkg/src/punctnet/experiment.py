"""Sampling experiments over token sequences and their adjacency networks.

Implements random-substring sampling with the corpus treated as a ring,
the shuffled null model, per-item metric curves and scatter tables
rescaled by null-model counterparts, and hub-removal sweeps.

Every random draw flows from one root seed through documented streams
(``default_rng([seed, stream, *indices])`` with numpy's PCG64), so results
are byte-identical across runs and independent of worker count:

* stream 1: substring start offsets, keyed by substring size
* stream 2: null-model shuffles for the scatter table
* stream 3: null-model shuffles for removal sweeps
* stream 4: BFS source sampling inside large-graph ASPL estimates
* stream 5: start offsets for the scatter table's empirical samples
"""

from __future__ import annotations

import csv
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from .corpus import Corpus, SourceSpan, TokenKind, aggregate_fullstops, merge_corpora, read_tokens
from .graph import (
    AdjacencyGraph,
    global_metrics,
    graph_from_code_window,
    graph_from_local_codes,
    remove_node,
)
from . import _kernels
from .rankstats import build_rank_table

RNG_ALGORITHM = "numpy-PCG64"


class ManifestError(ValueError):
    """A problem with the experiment configuration rather than the data."""


_STREAM_STARTS = 1
_STREAM_SCATTER_NULL = 2
_STREAM_REMOVAL_NULL = 3
_STREAM_ASPL_SOURCES = 4
_STREAM_SCATTER_STARTS = 5

DEFAULT_SIZES = (1_000, 3_162, 10_000, 31_623, 100_000)


@dataclass
class SamplingPlan:
    """Substring sizes, realization counts, and targets for the experiments."""

    sizes: tuple[int, ...] = DEFAULT_SIZES
    realizations: int = 100  # sample networks per size
    seed: int = 0
    scatter_size: int = 10_000
    null_realizations: int = 100
    extra_targets: tuple[str, ...] = ()
    top_targets: int = 10

    def validate(self, corpus_len: int) -> None:
        if self.realizations < 2:
            raise ValueError(f"need at least 2 realizations, got {self.realizations}")
        for s in (*self.sizes, self.scatter_size):
            if s < 2:
                raise ValueError(f"substring size {s} too small")
            if s > corpus_len // 10:
                raise ValueError(
                    f"substring size {s} exceeds a tenth of the corpus length {corpus_len}"
                )


@dataclass
class MetricSample:
    """Mean per-node metrics for one surface at one sample size."""

    surface: str
    size: int
    count: int  # realizations where the node was present with defined metrics
    aspl_mean: float
    aspl_stderr: float
    lcc_mean: float
    lcc_stderr: float


@dataclass
class ScatterRow:
    surface: str
    count: int
    aspl_mean: float
    aspl_stderr: float
    lcc_mean: float
    lcc_stderr: float
    null_count: int
    aspl_null_mean: float
    aspl_null_stderr: float
    lcc_null_mean: float
    lcc_null_stderr: float
    aspl_ratio: float
    lcc_ratio: float


@dataclass
class RemovalRow:
    rank: int  # 0 = complete network
    surface: str  # removed node ("" for the complete network)
    n: int
    e: int
    aspl: float
    aspl_over_log_n: float
    clustering: float
    assortativity: float | None
    aspl_null: float
    clustering_null: float
    assortativity_null: float | None
    aspl_ratio: float
    clustering_ratio: float
    assortativity_ratio: float | None
    disconnected: bool


@dataclass
class RemovalSweep:
    rows: list[RemovalRow]


@dataclass
class FreqDegreeRow:
    surface: str
    frequency: int
    degree: int
    degree_over_frequency: float
    exceeds_one: bool  # low-frequency corner where degree > frequency


def substring_starts(corpus_len: int, size: int, m: int, seed: int) -> np.ndarray:
    """Uniform start offsets (with replacement); the corpus is a ring."""
    rng = np.random.default_rng([seed, _STREAM_STARTS, size])
    return rng.integers(0, corpus_len, size=m)


def ring_window(codes: np.ndarray, start: int, size: int) -> np.ndarray:
    idx = np.arange(start, start + size) % codes.shape[0]
    return codes[idx]


def sample_substrings(corpus: Corpus, size: int, m: int, seed: int) -> list[Corpus]:
    """Draw ``m`` substrings of ``size`` tokens, wrapping around the end."""
    n = len(corpus)
    if size > n // 10:
        raise ValueError(f"substring size {size} exceeds a tenth of the corpus length {n}")
    out = []
    for start in substring_starts(n, size, m, seed):
        idx = [int(i % n) for i in range(start, start + size)]
        tokens = [corpus.tokens[i] for i in idx]
        out.append(
            Corpus(
                tokens=tokens,
                sources=[SourceSpan(f"substring@{start}", 0, size)],
                language=corpus.language,
            )
        )
    return out


def shuffle_null(corpus: Corpus, seed: int) -> Corpus:
    """Uniform random permutation of the token sequence (same multiset)."""
    rng = np.random.default_rng(seed)
    perm = rng.permutation(len(corpus))
    tokens = [corpus.tokens[i] for i in perm]
    return Corpus(
        tokens=tokens,
        sources=[SourceSpan("shuffled", 0, len(tokens))],
        language=corpus.language,
    )


def freq_vs_degree(graph: AdjacencyGraph, targets: Sequence[str]) -> list[FreqDegreeRow]:
    """Raw frequency and binary degree per target, plus their ratio."""
    deg = graph.degrees()
    rows = []
    for s in targets:
        nid = graph.node_id(s)
        f = int(graph.freq[nid])
        k = int(deg[nid])
        ratio = k / f
        rows.append(FreqDegreeRow(s, f, k, ratio, ratio > 1.0))
    return rows


# ---------------------------------------------------------------------------
# Parallel engine.  Workers receive the coded corpus once via the pool
# initializer; every task seeds its own generator, so reduction order is
# fixed by task index and results do not depend on the worker count.

_STATE: dict = {}


def _init_worker(state: dict) -> None:
    global _STATE
    _STATE = state
    _kernels.warmup()


def _window_target_metrics(window: np.ndarray, target_codes: np.ndarray) -> np.ndarray:
    """ASPL and clustering for each target in one sample window.

    Returns an array (targets, 2) with NaN where a target is absent or its
    metric is undefined.
    """
    present_codes = np.unique(window)
    local = np.searchsorted(present_codes, window).astype(np.int32)
    g = graph_from_local_codes(local, present_codes.shape[0])
    indptr, indices = g.binary_csr()
    deg = g.degrees()
    tri = g.triangles()
    out = np.full((target_codes.shape[0], 2), np.nan)
    pos = np.searchsorted(present_codes, target_codes)
    for t, code in enumerate(target_codes):
        p = pos[t]
        if p >= present_codes.shape[0] or present_codes[p] != code:
            continue
        sums, counts = _kernels.bfs_distance_sums(indptr, indices, np.array([p], np.int32))
        if counts[0] > 0:
            out[t, 0] = sums[0] / counts[0]
        k = deg[p]
        out[t, 1] = 2.0 * tri[p] / (k * (k - 1)) if k >= 2 else 0.0
    return out


def _curve_task(args: tuple[int, int]) -> np.ndarray:
    size, start = args
    window = ring_window(_STATE["codes"], start, size)
    return _window_target_metrics(window, _STATE["target_codes"])


def _scatter_null_task(r: int) -> np.ndarray:
    codes = _STATE["codes"]
    rng = np.random.default_rng([_STATE["seed"], _STREAM_SCATTER_NULL, r])
    perm = rng.permutation(codes.shape[0])
    start = int(rng.integers(0, codes.shape[0]))
    window = ring_window(codes[perm], start, _STATE["scatter_size"])
    return _window_target_metrics(window, _STATE["target_codes"])


def _network_summary(
    g: AdjacencyGraph, exact_budget: int, sample_seed: Sequence[int]
) -> tuple[float, float, float, bool, int, int]:
    gm = global_metrics(g, exact_budget=exact_budget, sample_seed=sample_seed)
    r = math.nan if gm.assortativity is None else gm.assortativity
    return gm.aspl, gm.clustering, r, gm.reachable_fraction < 1.0, gm.n, gm.e


def _removal_null_task(r: int) -> list[tuple[float, float, float, bool, int, int]]:
    codes = _STATE["codes"]
    rng = np.random.default_rng([_STATE["seed"], _STREAM_REMOVAL_NULL, r])
    perm = rng.permutation(codes.shape[0])
    g = graph_from_code_window(codes[perm], _STATE["vocab"])
    budget = _STATE["null_exact_budget"]
    rows = [_network_summary(g, budget, [_STATE["seed"], _STREAM_ASPL_SOURCES, r + 1, 0])]
    for i, surface in enumerate(_STATE["removal_surfaces"], start=1):
        gi = remove_node(g, surface)
        rows.append(_network_summary(gi, budget, [_STATE["seed"], _STREAM_ASPL_SOURCES, r + 1, i]))
    return rows


def _run_tasks(fn, tasks, state: dict, workers: int) -> list:
    if workers <= 1 or len(tasks) <= 1:
        global _STATE
        saved = _STATE
        _STATE = state
        try:
            return [fn(t) for t in tasks]
        finally:
            _STATE = saved
    with ProcessPoolExecutor(max_workers=workers, initializer=_init_worker, initargs=(state,)) as ex:
        return list(ex.map(fn, tasks, chunksize=max(1, len(tasks) // (4 * workers))))


# ---------------------------------------------------------------------------
# Experiment front-ends.


def transform_corpus(corpus: Corpus, include_punct: bool = True, fs_mode: bool = True) -> Corpus:
    """The token sequence the network experiments actually run on."""
    if fs_mode:
        corpus = aggregate_fullstops(corpus)
    if not include_punct:
        tokens = [t for t in corpus.tokens if t.kind is TokenKind.WORD]
        corpus = Corpus(tokens=tokens, sources=[SourceSpan("words-only", 0, len(tokens))], language=corpus.language)
    return corpus


def resolve_targets(corpus: Corpus, plan: SamplingPlan) -> list[str]:
    """Top-ranked surfaces plus any extra targets; extras must exist."""
    table = build_rank_table(corpus, include_punct=True, fs_mode=False)
    targets = table.top_surfaces(plan.top_targets)
    index = corpus.coded().index
    for extra in plan.extra_targets:
        if extra not in index:
            raise ValueError(f"target {extra!r} not in corpus vocabulary")
        if extra not in targets:
            targets.append(extra)
    return targets


def _mean_stderr(values: np.ndarray) -> tuple[int, float, float]:
    ok = np.isfinite(values)
    count = int(np.count_nonzero(ok))
    if count == 0:
        return 0, math.nan, math.nan
    sel = values[ok]
    mean = float(np.mean(sel))
    stderr = float(np.std(sel, ddof=1) / math.sqrt(count)) if count > 1 else 0.0
    return count, mean, stderr


def _state_for(corpus: Corpus, plan: SamplingPlan, targets: Sequence[str], **extra) -> dict:
    coded = corpus.coded()
    target_codes = np.array([coded.index[t] for t in targets], np.int64)
    state = {
        "codes": coded.codes,
        "vocab": coded.vocab,
        "target_codes": target_codes,
        "seed": plan.seed,
        "scatter_size": plan.scatter_size,
    }
    state.update(extra)
    return state


def metric_curves(
    corpus: Corpus, plan: SamplingPlan, targets: Sequence[str] | None = None, workers: int = 1
) -> list[MetricSample]:
    """Mean per-target ASPL and clustering as functions of sample size."""
    plan.validate(len(corpus))
    if targets is None:
        targets = resolve_targets(corpus, plan)
    state = _state_for(corpus, plan, targets)
    tasks = []
    for size in plan.sizes:
        starts = substring_starts(len(corpus), size, plan.realizations, plan.seed)
        tasks.extend((size, int(s)) for s in starts)
    results = _run_tasks(_curve_task, tasks, state, workers)
    out: list[MetricSample] = []
    for si, size in enumerate(plan.sizes):
        block = np.stack(results[si * plan.realizations : (si + 1) * plan.realizations])
        for t, surface in enumerate(targets):
            count, aspl_mean, aspl_stderr = _mean_stderr(block[:, t, 0])
            _, lcc_mean, lcc_stderr = _mean_stderr(block[:, t, 1])
            out.append(MetricSample(surface, size, count, aspl_mean, aspl_stderr, lcc_mean, lcc_stderr))
    return out


def scatter_data(
    corpus: Corpus,
    plan: SamplingPlan,
    targets: Sequence[str] | None = None,
    workers: int = 1,
) -> list[ScatterRow]:
    """Per-target empirical means at the designated size and null-model ratios."""
    plan.validate(len(corpus))
    if targets is None:
        targets = resolve_targets(corpus, plan)
    state = _state_for(corpus, plan, targets)
    starts = np.random.default_rng([plan.seed, _STREAM_SCATTER_STARTS, plan.scatter_size]).integers(
        0, len(corpus), size=plan.realizations
    )
    emp = np.stack(
        _run_tasks(_curve_task, [(plan.scatter_size, int(s)) for s in starts], state, workers)
    )
    null = np.stack(
        _run_tasks(_scatter_null_task, list(range(plan.null_realizations)), state, workers)
    )
    rows: list[ScatterRow] = []
    for t, surface in enumerate(targets):
        count, aspl_mean, aspl_se = _mean_stderr(emp[:, t, 0])
        _, lcc_mean, lcc_se = _mean_stderr(emp[:, t, 1])
        null_count, aspl_null, aspl_null_se = _mean_stderr(null[:, t, 0])
        _, lcc_null, lcc_null_se = _mean_stderr(null[:, t, 1])
        rows.append(
            ScatterRow(
                surface=surface,
                count=count,
                aspl_mean=aspl_mean,
                aspl_stderr=aspl_se,
                lcc_mean=lcc_mean,
                lcc_stderr=lcc_se,
                null_count=null_count,
                aspl_null_mean=aspl_null,
                aspl_null_stderr=aspl_null_se,
                lcc_null_mean=lcc_null,
                lcc_null_stderr=lcc_null_se,
                aspl_ratio=aspl_mean / aspl_null if aspl_null else math.nan,
                lcc_ratio=lcc_mean / lcc_null if lcc_null else math.nan,
            )
        )
    return rows


def null_relation_exponent(rows: Sequence[ScatterRow]) -> float:
    """Log-log OLS slope of null clustering against null ASPL across targets."""
    pts = [
        (r.aspl_null_mean, r.lcc_null_mean)
        for r in rows
        if r.aspl_null_mean > 0 and r.lcc_null_mean > 0
    ]
    if len(pts) < 3:
        raise ValueError(f"need at least 3 usable points, got {len(pts)}")
    x = np.log([p[0] for p in pts])
    y = np.log([p[1] for p in pts])
    dx = x - x.mean()
    return float(np.dot(dx, y - y.mean()) / np.dot(dx, dx))


def removal_sweep(
    corpus: Corpus,
    null_realizations: int = 100,
    seed: int = 0,
    ranks: int = 10,
    exact_budget: int = 20_000,
    null_exact_budget: int | None = None,
    workers: int = 1,
) -> RemovalSweep:
    """Global metrics before and after removing each of the top-ranked nodes.

    Null denominators come from shuffled corpora with the same surfaces
    removed.  ``null_exact_budget`` lets the (many) null networks fall back
    to sampled ASPL earlier than the empirical ones.
    """
    if null_realizations < 1:
        raise ValueError("need at least one null realization")
    table = build_rank_table(corpus, include_punct=True, fs_mode=False)
    if len(table) < ranks:
        raise ValueError(f"corpus has only {len(table)} distinct items; need {ranks}")
    surfaces = table.top_surfaces(ranks)
    if null_exact_budget is None:
        null_exact_budget = exact_budget

    coded = corpus.coded()
    g = graph_from_code_window(coded.codes, coded.vocab)
    empirical = [_network_summary(g, exact_budget, [seed, _STREAM_ASPL_SOURCES, 0, 0])]
    for i, surface in enumerate(surfaces, start=1):
        gi = remove_node(g, surface)
        empirical.append(_network_summary(gi, exact_budget, [seed, _STREAM_ASPL_SOURCES, 0, i]))

    state = {
        "codes": coded.codes,
        "vocab": coded.vocab,
        "seed": seed,
        "removal_surfaces": surfaces,
        "null_exact_budget": null_exact_budget,
    }
    null_rows = _run_tasks(_removal_null_task, list(range(null_realizations)), state, workers)

    rows: list[RemovalRow] = []
    for i in range(ranks + 1):
        aspl, clus, assort, disc, n, e = empirical[i]
        null_aspl = float(np.mean([nr[i][0] for nr in null_rows]))
        null_clus = float(np.mean([nr[i][1] for nr in null_rows]))
        null_assort_vals = [nr[i][2] for nr in null_rows]
        null_assort = float(np.mean(null_assort_vals))
        assort_defined = math.isfinite(assort) and math.isfinite(null_assort) and null_assort != 0
        rows.append(
            RemovalRow(
                rank=i,
                surface=surfaces[i - 1] if i else "",
                n=n,
                e=e,
                aspl=aspl,
                aspl_over_log_n=aspl / math.log(n) if n > 1 else math.nan,
                clustering=clus,
                assortativity=assort if math.isfinite(assort) else None,
                aspl_null=null_aspl,
                clustering_null=null_clus,
                assortativity_null=null_assort if math.isfinite(null_assort) else None,
                aspl_ratio=aspl / null_aspl if null_aspl else math.nan,
                clustering_ratio=clus / null_clus if null_clus else math.nan,
                assortativity_ratio=assort / null_assort if assort_defined else None,
                disconnected=disc,
            )
        )
    return RemovalSweep(rows=rows)


# ---------------------------------------------------------------------------
# Manifest-driven runs and CSV serialization.


@dataclass
class ExperimentManifest:
    corpus_files: list[str]
    seed: int
    out_dir: str
    include_punct: bool = True
    fs_mode: bool = True
    sizes: tuple[int, ...] = DEFAULT_SIZES
    realizations: int = 100
    scatter_size: int = 10_000
    null_realizations: int = 100
    extra_targets: tuple[str, ...] = ()
    removal_enabled: bool = True
    removal_ranks: int = 10
    removal_null_realizations: int | None = None  # defaults to null_realizations
    removal_exact_budget: int = 20_000
    removal_null_exact_budget: int | None = None
    removal_novel_index: int | None = None  # restrict the sweep to one source text
    workers: int = 0  # 0 = use the available CPUs, capped at 4
    extra: dict = field(default_factory=dict)

    def effective_workers(self) -> int:
        if self.workers > 0:
            return self.workers
        return max(1, min(4, os.cpu_count() or 1))


def load_manifest(path: str | Path) -> ExperimentManifest:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ManifestError(f"manifest {path}: invalid JSON: {exc}") from exc
    missing = [key for key in ("corpus", "seed", "out") if key not in data]
    if missing:
        raise ManifestError(f"manifest {path}: missing required keys {missing}")
    if not isinstance(data["seed"], int) or isinstance(data["seed"], bool) or data["seed"] < 0:
        raise ManifestError(f"manifest {path}: seed must be a non-negative integer")
    corpus_files = data["corpus"]
    if isinstance(corpus_files, str):
        corpus_files = [corpus_files]
    if not corpus_files:
        raise ManifestError(f"manifest {path}: empty corpus file list")
    base = Path(path).parent
    corpus_files = [f if Path(f).is_absolute() else str(base / f) for f in corpus_files]
    absent = [f for f in corpus_files if not Path(f).exists()]
    if absent:
        raise ManifestError(f"manifest {path}: corpus files not found: {absent}")
    removal = data.get("removal", {})
    return ExperimentManifest(
        corpus_files=list(corpus_files),
        seed=data["seed"],
        out_dir=data["out"],
        include_punct=data.get("include_punct", True),
        fs_mode=data.get("fs_mode", True),
        sizes=tuple(data.get("sizes", DEFAULT_SIZES)),
        realizations=data.get("realizations", 100),
        scatter_size=data.get("scatter_size", 10_000),
        null_realizations=data.get("null_realizations", 100),
        extra_targets=tuple(data.get("extra_targets", ())),
        removal_enabled=removal.get("enabled", True),
        removal_ranks=removal.get("ranks", 10),
        removal_null_realizations=removal.get("null_realizations"),
        removal_exact_budget=removal.get("exact_budget", 20_000),
        removal_null_exact_budget=removal.get("null_exact_budget"),
        removal_novel_index=removal.get("novel_index"),
        workers=data.get("workers", 0),
    )


def write_metric_curves_csv(samples: Sequence[MetricSample], path: str | Path) -> None:
    _write_csv(
        path,
        ["surface", "size", "count", "aspl_mean", "aspl_stderr", "lcc_mean", "lcc_stderr"],
        [
            [s.surface, s.size, s.count, repr(s.aspl_mean), repr(s.aspl_stderr), repr(s.lcc_mean), repr(s.lcc_stderr)]
            for s in samples
        ],
    )


def write_scatter_csv(rows: Sequence[ScatterRow], path: str | Path) -> None:
    _write_csv(
        path,
        [
            "surface", "count", "aspl_mean", "aspl_stderr", "lcc_mean", "lcc_stderr",
            "null_count", "aspl_null_mean", "aspl_null_stderr", "lcc_null_mean",
            "lcc_null_stderr", "aspl_ratio", "lcc_ratio",
        ],
        [
            [
                r.surface, r.count, repr(r.aspl_mean), repr(r.aspl_stderr), repr(r.lcc_mean),
                repr(r.lcc_stderr), r.null_count, repr(r.aspl_null_mean), repr(r.aspl_null_stderr),
                repr(r.lcc_null_mean), repr(r.lcc_null_stderr), repr(r.aspl_ratio), repr(r.lcc_ratio),
            ]
            for r in rows
        ],
    )


def write_removal_csv(sweep: RemovalSweep, path: str | Path) -> None:
    def opt(x: float | None) -> str:
        return "" if x is None else repr(x)

    _write_csv(
        path,
        [
            "rank", "surface", "n", "e", "aspl", "aspl_over_log_n", "clustering",
            "assortativity", "aspl_null", "clustering_null", "assortativity_null",
            "aspl_ratio", "clustering_ratio", "assortativity_ratio", "disconnected",
        ],
        [
            [
                r.rank, r.surface, r.n, r.e, repr(r.aspl), repr(r.aspl_over_log_n),
                repr(r.clustering), opt(r.assortativity), repr(r.aspl_null),
                repr(r.clustering_null), opt(r.assortativity_null), repr(r.aspl_ratio),
                repr(r.clustering_ratio), opt(r.assortativity_ratio), int(r.disconnected),
            ]
            for r in sweep.rows
        ],
    )


def write_freq_degree_csv(rows: Sequence[FreqDegreeRow], path: str | Path) -> None:
    _write_csv(
        path,
        ["surface", "frequency", "degree", "degree_over_frequency", "exceeds_one"],
        [
            [r.surface, r.frequency, r.degree, repr(r.degree_over_frequency), int(r.exceeds_one)]
            for r in rows
        ],
    )


def _write_csv(path: str | Path, header: list[str], rows: list[list]) -> None:
    with Path(path).open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)


def run_experiment(manifest: ExperimentManifest) -> dict:
    """Execute every experiment named by the manifest and write the CSVs."""
    corpus = merge_corpora([read_tokens(p) for p in manifest.corpus_files]) \
        if len(manifest.corpus_files) > 1 else read_tokens(manifest.corpus_files[0])
    work = transform_corpus(corpus, include_punct=manifest.include_punct, fs_mode=manifest.fs_mode)

    plan = SamplingPlan(
        sizes=manifest.sizes,
        realizations=manifest.realizations,
        seed=manifest.seed,
        scatter_size=manifest.scatter_size,
        null_realizations=manifest.null_realizations,
        extra_targets=manifest.extra_targets,
    )
    try:
        plan.validate(len(work))
        targets = resolve_targets(work, plan)
    except ValueError as exc:
        raise ManifestError(str(exc)) from exc

    workers = manifest.effective_workers()
    out_dir = Path(manifest.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    outputs: list[str] = []

    curves = metric_curves(work, plan, targets, workers=workers)
    write_metric_curves_csv(curves, out_dir / "metrics_vs_size.csv")
    outputs.append("metrics_vs_size.csv")

    scatter = scatter_data(work, plan, targets, workers=workers)
    write_scatter_csv(scatter, out_dir / "scatter.csv")
    outputs.append("scatter.csv")

    coded = work.coded()
    full_graph = graph_from_code_window(coded.codes, coded.vocab)
    write_freq_degree_csv(freq_vs_degree(full_graph, targets), out_dir / "freq_vs_degree.csv")
    outputs.append("freq_vs_degree.csv")

    if manifest.removal_enabled:
        removal_corpus = work
        if manifest.removal_novel_index is not None:
            removal_corpus = transform_corpus(
                corpus.source_slice(manifest.removal_novel_index),
                include_punct=manifest.include_punct,
                fs_mode=manifest.fs_mode,
            )
        sweep = removal_sweep(
            removal_corpus,
            null_realizations=manifest.removal_null_realizations or manifest.null_realizations,
            seed=manifest.seed,
            ranks=manifest.removal_ranks,
            exact_budget=manifest.removal_exact_budget,
            null_exact_budget=manifest.removal_null_exact_budget,
            workers=workers,
        )
        write_removal_csv(sweep, out_dir / "removal_sweep.csv")
        outputs.append("removal_sweep.csv")

    return {"outputs": outputs, "targets": targets}
