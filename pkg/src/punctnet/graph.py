"""Word-adjacency networks and their local/global measures.

Nodes are distinct token surfaces; an edge's multiplicity counts how often
the two surfaces sit next to each other.  All path and clustering measures
run on the binary view (self-loops excluded); multiplicities are kept for
the weighted degree and frequency-vs-degree analysis.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from . import _kernels
from .corpus import Corpus


@dataclass
class AdjacencyGraph:
    """Undirected multigraph in sorted edge-array form.

    Edge pairs satisfy ``lo <= hi`` and are sorted lexicographically, so a
    graph built twice from the same sequence serializes identically.
    """

    surfaces: list[str]  # node id -> surface (first-occurrence order)
    freq: np.ndarray  # node id -> occurrence count in the source sequence
    edge_lo: np.ndarray
    edge_hi: np.ndarray
    edge_w: np.ndarray  # multiplicities
    looped: bool = False

    def __post_init__(self) -> None:
        self._index: dict[str, int] | None = None
        self._csr: tuple[np.ndarray, np.ndarray] | None = None
        self._tri: np.ndarray | None = None
        self._degree: np.ndarray | None = None

    @property
    def n(self) -> int:
        return len(self.surfaces)

    @property
    def e(self) -> int:
        """Unique binary edges (self-loops not counted)."""
        return int(np.count_nonzero(self.edge_lo != self.edge_hi))

    def node_id(self, surface: str) -> int:
        if self._index is None:
            self._index = {s: i for i, s in enumerate(self.surfaces)}
        try:
            return self._index[surface]
        except KeyError:
            raise KeyError(f"unknown node {surface!r}") from None

    def has_node(self, surface: str) -> bool:
        if self._index is None:
            self._index = {s: i for i, s in enumerate(self.surfaces)}
        return surface in self._index

    def binary_csr(self) -> tuple[np.ndarray, np.ndarray]:
        """CSR adjacency of the binary graph, neighbor lists sorted by id."""
        if self._csr is None:
            mask = self.edge_lo != self.edge_hi
            lo = self.edge_lo[mask]
            hi = self.edge_hi[mask]
            src = np.concatenate([lo, hi])
            dst = np.concatenate([hi, lo])
            order = np.lexsort((dst, src))
            src = src[order]
            dst = dst[order]
            indptr = np.zeros(self.n + 1, np.int64)
            np.cumsum(np.bincount(src, minlength=self.n), out=indptr[1:])
            self._csr = (indptr, dst.astype(np.int32))
        return self._csr

    def degrees(self) -> np.ndarray:
        """Binary degrees (unique neighbors, self excluded)."""
        if self._degree is None:
            indptr, _ = self.binary_csr()
            self._degree = np.diff(indptr).astype(np.int64)
        return self._degree

    def weighted_degrees(self) -> np.ndarray:
        """Multiplicity-weighted degrees; a self-loop counts twice."""
        kw = np.zeros(self.n, np.int64)
        np.add.at(kw, self.edge_lo, self.edge_w)
        np.add.at(kw, self.edge_hi, self.edge_w)
        return kw

    def triangles(self) -> np.ndarray:
        """Triangles through each node (= binary edges among its neighbors)."""
        if self._tri is None:
            self._tri = _triangle_counts(self)
        return self._tri


def build_graph(corpus: Corpus, looped: bool = False) -> AdjacencyGraph:
    """Build the adjacency graph of consecutive token pairs.

    With ``looped=True`` the (last, first) pair is included, which makes
    every node's weighted degree exactly twice its frequency.
    """
    if len(corpus) < 2:
        raise ValueError(f"corpus has {len(corpus)} tokens; need at least 2")
    coded = corpus.coded()
    return _graph_from_codes(coded.codes, coded.vocab, looped=looped)


def graph_from_code_window(
    codes: np.ndarray, vocab: Sequence[str], looped: bool = False
) -> AdjacencyGraph:
    """Build a graph from an integer-coded token window (ids into ``vocab``)."""
    if codes.shape[0] < 2:
        raise ValueError("token window shorter than 2")
    present = np.unique(codes)  # global-code order == corpus first-occurrence order
    local = np.searchsorted(present, codes).astype(np.int32)
    surfaces = [vocab[g] for g in present]
    return _graph_from_codes(local, surfaces, looped=looped)


def graph_from_local_codes(local: np.ndarray, n: int) -> AdjacencyGraph:
    """Graph over anonymous nodes 0..n-1 (fast path for sample windows)."""
    return _graph_from_codes(local, [str(i) for i in range(n)], looped=False)


def _graph_from_codes(codes: np.ndarray, surfaces: Sequence[str], looped: bool) -> AdjacencyGraph:
    n = len(surfaces)
    a = codes[:-1].astype(np.int64)
    b = codes[1:].astype(np.int64)
    if looped:
        a = np.concatenate([a, codes[-1:].astype(np.int64)])
        b = np.concatenate([b, codes[:1].astype(np.int64)])
    lo = np.minimum(a, b)
    hi = np.maximum(a, b)
    key = lo * n + hi
    uniq, counts = np.unique(key, return_counts=True)
    return AdjacencyGraph(
        surfaces=list(surfaces),
        freq=np.bincount(codes, minlength=n).astype(np.int64),
        edge_lo=(uniq // n).astype(np.int32),
        edge_hi=(uniq % n).astype(np.int32),
        edge_w=counts.astype(np.int64),
        looped=looped,
    )


def remove_node(graph: AdjacencyGraph, node: str | int) -> AdjacencyGraph:
    """Return a copy of the graph without one node and its incident edges."""
    nid = graph.node_id(node) if isinstance(node, str) else int(node)
    if not 0 <= nid < graph.n:
        raise KeyError(f"node id {nid} out of range")
    keep = (graph.edge_lo != nid) & (graph.edge_hi != nid)
    lo = graph.edge_lo[keep].astype(np.int64)
    hi = graph.edge_hi[keep].astype(np.int64)
    lo[lo > nid] -= 1
    hi[hi > nid] -= 1
    surfaces = graph.surfaces[:nid] + graph.surfaces[nid + 1 :]
    freq = np.delete(graph.freq, nid)
    return AdjacencyGraph(
        surfaces=surfaces,
        freq=freq,
        edge_lo=lo.astype(np.int32),
        edge_hi=hi.astype(np.int32),
        edge_w=graph.edge_w[keep].copy(),
        looped=graph.looped,
    )


def _triangle_counts(graph: AdjacencyGraph) -> np.ndarray:
    n = graph.n
    mask = graph.edge_lo != graph.edge_hi
    lo = graph.edge_lo[mask].astype(np.int64)
    hi = graph.edge_hi[mask].astype(np.int64)
    deg = graph.degrees()
    # Orient each edge from the (degree, id)-smaller endpoint to the larger.
    swap = (deg[lo] > deg[hi]) | ((deg[lo] == deg[hi]) & (lo > hi))
    src = np.where(swap, hi, lo)
    dst = np.where(swap, lo, hi)
    order = np.lexsort((dst, src))
    src = src[order]
    dst = dst[order].astype(np.int32)
    indptr = np.zeros(n + 1, np.int64)
    np.cumsum(np.bincount(src, minlength=n), out=indptr[1:])
    return _kernels.triangle_counts(indptr, dst)


def node_aspl(graph: AdjacencyGraph, node: str | int) -> float:
    """Mean BFS distance from one node to the nodes it can reach.

    NaN when the node has no neighbors.
    """
    nid = graph.node_id(node) if isinstance(node, str) else int(node)
    indptr, indices = graph.binary_csr()
    sums, counts = _kernels.bfs_distance_sums(indptr, indices, np.array([nid], np.int32))
    if counts[0] == 0:
        return math.nan
    return float(sums[0]) / float(counts[0])


def node_lcc(graph: AdjacencyGraph, node: str | int) -> float:
    """Local clustering: realized fraction of edges among a node's neighbors."""
    nid = graph.node_id(node) if isinstance(node, str) else int(node)
    k = int(graph.degrees()[nid])
    if k < 2:
        return 0.0
    t = int(graph.triangles()[nid])
    return 2.0 * t / (k * (k - 1))


@dataclass
class GlobalMetrics:
    n: int
    e: int
    aspl: float  # mean over source nodes of per-node ASPL
    aspl_stderr: float  # 0 when every node served as a source
    clustering: float  # mean local clustering over all nodes
    assortativity: float | None  # None when endpoint degrees have no variance
    sources: int
    reachable_fraction: float

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "e": self.e,
            "aspl": self.aspl,
            "aspl_stderr": self.aspl_stderr,
            "clustering": self.clustering,
            "assortativity": self.assortativity,
            "assortativity_defined": self.assortativity is not None,
            "sources": self.sources,
            "reachable_fraction": self.reachable_fraction,
        }


def degree_assortativity(graph: AdjacencyGraph) -> float | None:
    """Pearson correlation of binary degrees across edge endpoints.

    Computed from exact integer sums over both edge orientations; returns
    None when the endpoint-degree variance is zero.
    """
    mask = graph.edge_lo != graph.edge_hi
    lo = graph.edge_lo[mask]
    hi = graph.edge_hi[mask]
    if lo.size == 0:
        return None
    deg = graph.degrees()
    dl = deg[lo]
    dh = deg[hi]
    m = 2 * int(lo.size)
    sx = int(np.sum(dl)) + int(np.sum(dh))
    sxy = 2 * int(np.sum(dl * dh))
    sxx = int(np.sum(dl * dl)) + int(np.sum(dh * dh))
    num = m * sxy - sx * sx
    den = m * sxx - sx * sx
    if den == 0:
        return None
    return num / den


def global_metrics(
    graph: AdjacencyGraph,
    exact_budget: int = 20_000,
    sample_seed: int | Sequence[int] = 0,
    min_sources: int = 1000,
) -> GlobalMetrics:
    """Graph-level ASPL, clustering, and assortativity.

    ASPL is exact (every node a BFS source) for graphs up to
    ``exact_budget`` nodes and otherwise estimated from a seeded uniform
    sample of at least ``min_sources`` sources, with a standard error.
    """
    n = graph.n
    indptr, indices = graph.binary_csr()
    if n <= exact_budget:
        sources = np.arange(n, dtype=np.int32)
    else:
        rng = np.random.default_rng(sample_seed)
        sources = np.sort(rng.choice(n, size=min(n, min_sources), replace=False)).astype(np.int32)
    sums, counts = _kernels.bfs_distance_sums(indptr, indices, sources)
    reached = counts > 0
    if np.any(reached):
        ell = sums[reached] / counts[reached]
        aspl = float(np.mean(ell))
        if sources.size < n and ell.size > 1:
            stderr = float(np.std(ell, ddof=1) / math.sqrt(ell.size))
        else:
            stderr = 0.0
        reachable = float(np.mean(counts / max(n - 1, 1)))
    else:
        aspl = math.nan
        stderr = math.nan
        reachable = 0.0

    deg = graph.degrees()
    tri = graph.triangles()
    with np.errstate(divide="ignore", invalid="ignore"):
        denom = deg * (deg - 1)
        lcc = np.where(denom > 0, 2.0 * tri / np.maximum(denom, 1), 0.0)
    clustering = float(np.mean(lcc)) if n else math.nan

    return GlobalMetrics(
        n=n,
        e=graph.e,
        aspl=aspl,
        aspl_stderr=stderr,
        clustering=clustering,
        assortativity=degree_assortativity(graph),
        sources=int(sources.size),
        reachable_fraction=reachable,
    )


def heaps_curve(corpus: Corpus, sizes: Sequence[int]) -> list[tuple[int, int]]:
    """Vocabulary size after the first ``s`` tokens, for each requested ``s``."""
    length = len(corpus)
    for s in sizes:
        if s > length:
            raise ValueError(f"size {s} exceeds corpus length {length}")
        if s < 1:
            raise ValueError(f"size {s} must be positive")
    codes = corpus.coded().codes
    _, first_idx = np.unique(codes, return_index=True)
    first_idx.sort()
    return [(int(s), int(np.searchsorted(first_idx, s, side="left"))) for s in sizes]


def write_edge_list(graph: AdjacencyGraph, path: str | Path) -> None:
    """Tab-separated edges: surface, surface, multiplicity."""
    with Path(path).open("w", encoding="utf-8") as fh:
        for lo, hi, w in zip(graph.edge_lo, graph.edge_hi, graph.edge_w):
            fh.write(f"{graph.surfaces[lo]}\t{graph.surfaces[hi]}\t{w}\n")


def write_node_metrics(graph: AdjacencyGraph, surfaces: Sequence[str], path: str | Path) -> None:
    """Per-node metrics for selected surfaces as a JSON object keyed by surface."""
    deg = graph.degrees()
    kw = graph.weighted_degrees()
    records = {}
    for s in surfaces:
        nid = graph.node_id(s)
        records[s] = {
            "aspl": node_aspl(graph, nid),
            "lcc": node_lcc(graph, nid),
            "degree": int(deg[nid]),
            "weighted_degree": int(kw[nid]),
            "frequency": int(graph.freq[nid]),
        }
    Path(path).write_text(json.dumps(records, indent=2, sort_keys=True) + "\n", encoding="utf-8")
