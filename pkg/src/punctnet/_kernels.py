"""Compiled kernels for BFS distances and triangle counting.

All outputs are integer arrays so that results are bit-identical across
runs and worker processes; floating-point reductions happen in the callers
in a fixed order.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def bfs_distance_sums(indptr, indices, sources):
    """Per-source BFS on a CSR graph.

    Returns (sums, counts): the sum of shortest-path lengths from each
    source to every node it can reach, and the number of reached nodes
    (the source itself excluded).
    """
    n = indptr.shape[0] - 1
    ns = sources.shape[0]
    sums = np.zeros(ns, np.int64)
    counts = np.zeros(ns, np.int64)
    dist = np.full(n, -1, np.int32)
    queue = np.empty(n, np.int32)
    for si in range(ns):
        s = sources[si]
        dist[s] = 0
        queue[0] = s
        head = 0
        tail = 1
        total = np.int64(0)
        while head < tail:
            u = queue[head]
            head += 1
            du = dist[u]
            for ei in range(indptr[u], indptr[u + 1]):
                v = indices[ei]
                if dist[v] < 0:
                    dist[v] = du + 1
                    total += du + 1
                    queue[tail] = v
                    tail += 1
        sums[si] = total
        counts[si] = tail - 1
        for t in range(tail):  # reset only touched entries
            dist[queue[t]] = -1
    return sums, counts


@njit(cache=True)
def triangle_counts(indptr_fwd, indices_fwd):
    """Per-node triangle counts via the forward (oriented) algorithm.

    ``indices_fwd`` must hold, for each node, its neighbors that come
    later in a fixed total order (here: by degree, ties by id), sorted
    ascending by node id.  Each triangle is found exactly once and
    credited to all three corners.
    """
    n = indptr_fwd.shape[0] - 1
    tri = np.zeros(n, np.int64)
    for u in range(n):
        for idx in range(indptr_fwd[u], indptr_fwd[u + 1]):
            v = indices_fwd[idx]
            i = indptr_fwd[u]
            iend = indptr_fwd[u + 1]
            j = indptr_fwd[v]
            jend = indptr_fwd[v + 1]
            while i < iend and j < jend:
                wi = indices_fwd[i]
                wj = indices_fwd[j]
                if wi == wj:
                    tri[u] += 1
                    tri[v] += 1
                    tri[wi] += 1
                    i += 1
                    j += 1
                elif wi < wj:
                    i += 1
                else:
                    j += 1
    return tri


def warmup() -> None:
    """Trigger JIT compilation on a toy graph (compiled code is disk-cached)."""
    indptr = np.array([0, 2, 4, 6], np.int64)
    indices = np.array([1, 2, 0, 2, 0, 1], np.int32)
    bfs_distance_sums(indptr, indices, np.array([0], np.int32))
    fwd_ptr = np.array([0, 2, 3, 3], np.int64)
    fwd_idx = np.array([1, 2, 2], np.int32)
    triangle_counts(fwd_ptr, fwd_idx)
