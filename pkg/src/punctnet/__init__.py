"""Punctuation-aware corpus statistics and word-adjacency network analysis."""

from .corpus import (
    CleaningConfig,
    Corpus,
    Token,
    TokenKind,
    aggregate_fullstops,
    clean_text,
    default_cleaning_config,
    merge_corpora,
    tokenize,
)
from .graph import (
    AdjacencyGraph,
    GlobalMetrics,
    build_graph,
    global_metrics,
    heaps_curve,
    node_aspl,
    node_lcc,
    remove_node,
)
from .rankstats import (
    FitResult,
    RankTable,
    build_rank_table,
    compare_c,
    fit_power_law,
    fit_zipf_mandelbrot,
    rank_table_from_counts,
)

__version__ = "0.1.0"

__all__ = [
    "AdjacencyGraph",
    "CleaningConfig",
    "Corpus",
    "FitResult",
    "GlobalMetrics",
    "RankTable",
    "Token",
    "TokenKind",
    "aggregate_fullstops",
    "build_graph",
    "build_rank_table",
    "clean_text",
    "compare_c",
    "default_cleaning_config",
    "fit_power_law",
    "fit_zipf_mandelbrot",
    "global_metrics",
    "heaps_curve",
    "merge_corpora",
    "node_aspl",
    "node_lcc",
    "rank_table_from_counts",
    "remove_node",
    "tokenize",
]
