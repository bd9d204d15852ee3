"""Subgraph-embedding enumeration (the hot path of mining and filtration).

The search assigns pattern vertices 0..n-1 in order, trying target
candidates in ascending id, so embeddings come out in lexicographic order
of their image tuples and a cap is a reproducible prefix of that order.
Patterns in DFS-code vertex order make every prefix connected, which is
what keeps the candidate sets small.
"""

from __future__ import annotations

import weakref

import numpy as np

from topomine import kernels
from topomine.graphs import LabeledGraph

_target_cache: "weakref.WeakKeyDictionary[LabeledGraph, _TargetIndex]" = weakref.WeakKeyDictionary()


class _TargetIndex:
    """CSR adjacency + per-label vertex buckets for one target graph."""

    __slots__ = ("indptr", "indices", "labels", "bucket_indptr", "bucket_vertices")

    def __init__(self, g: LabeledGraph):
        n = g.vertex_count
        degs = [len(g.adj[v]) for v in range(n)]
        self.indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(degs, out=self.indptr[1:])
        self.indices = np.fromiter(
            (u for v in range(n) for u in g.adj[v]), dtype=np.int32, count=int(self.indptr[-1])
        )
        self.labels = np.array(g.labels, dtype=np.int32)
        n_labels = int(self.labels.max()) + 1 if n else 1
        buckets = [[] for _ in range(n_labels)]
        for v, lab in enumerate(g.labels):
            buckets[lab].append(v)
        self.bucket_indptr = np.zeros(n_labels + 1, dtype=np.int64)
        np.cumsum([len(b) for b in buckets], out=self.bucket_indptr[1:])
        self.bucket_vertices = np.fromiter(
            (v for b in buckets for v in b), dtype=np.int32, count=n
        )


def _index(g: LabeledGraph) -> _TargetIndex:
    idx = _target_cache.get(g)
    if idx is None:
        idx = _TargetIndex(g)
        _target_cache[g] = idx
    return idx


def _pattern_arrays(vertex_labels, edges):
    """Labels plus, per vertex, its pattern neighbors with smaller index."""
    pn = len(vertex_labels)
    back = [[] for _ in range(pn)]
    for u, v in edges:
        lo, hi = (u, v) if u < v else (v, u)
        back[hi].append(lo)
    for b in back:
        b.sort()
    indptr = np.zeros(pn + 1, dtype=np.int64)
    np.cumsum([len(b) for b in back], out=indptr[1:])
    flat = np.fromiter((x for b in back for x in b), dtype=np.int32, count=int(indptr[-1]))
    return np.array(vertex_labels, dtype=np.int32), indptr, flat


def enumerate_embeddings(pattern, target: LabeledGraph, cap: int | None = None) -> list[tuple[int, ...]]:
    """Every injective, label- and adjacency-preserving map of pattern into target.

    ``pattern`` is anything with ``vertex_labels`` and ``edges`` attributes
    (or a ``(labels, edges)`` pair). Returns image tuples (position i = image
    of pattern vertex i) in lexicographic order; ``cap`` keeps the first ones.
    """
    labels, edges = _unpack(pattern)
    if cap is not None and cap <= 0:
        raise ValueError(f"cap must be positive, got {cap}")
    if target.vertex_count == 0 or len(labels) > target.vertex_count:
        return []
    p_labels, bp, bf = _pattern_arrays(labels, edges)
    t = _index(target)
    arr = kernels.match_embeddings(
        p_labels, bp, bf, t.indptr, t.indices, t.labels,
        t.bucket_indptr, t.bucket_vertices, -1 if cap is None else int(cap),
    )
    return [tuple(int(x) for x in row) for row in arr]


def image_counts(pattern, target: LabeledGraph, cap: int | None = None):
    """Distinct-image count per pattern vertex, embedding count, truncation flag.

    With a cap, counts cover only the first ``cap`` embeddings in
    enumeration order (a lower bound on the exact counts).
    """
    labels, edges = _unpack(pattern)
    pn = len(labels)
    if target.vertex_count == 0 or pn > target.vertex_count:
        return np.zeros(pn, dtype=np.int64), 0, False
    p_labels, bp, bf = _pattern_arrays(labels, edges)
    t = _index(target)
    counts, n_emb, truncated = kernels.match_image_counts(
        p_labels, bp, bf, t.indptr, t.indices, t.labels,
        t.bucket_indptr, t.bucket_vertices, -1 if cap is None else int(cap),
    )
    return counts, int(n_emb), bool(truncated)


def _unpack(pattern):
    if isinstance(pattern, tuple) and len(pattern) == 2:
        return tuple(pattern[0]), list(pattern[1])
    return tuple(pattern.vertex_labels), list(pattern.edges)
