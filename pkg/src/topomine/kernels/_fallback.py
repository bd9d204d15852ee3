"""Pure-Python twins of the compiled kernels.

Same contracts and identical outputs as ``_speedups``: embedding
enumeration proceeds in lexicographic order of the image tuple, and the
column reduction returns the (unique) pivot of every reduced column.
"""

from __future__ import annotations

from bisect import bisect_left

import numpy as np

BACKEND = "python"


def _has(sorted_list, x) -> bool:
    i = bisect_left(sorted_list, x)
    return i < len(sorted_list) and sorted_list[i] == x


def _match(p_labels, p_back_indptr, p_back, t_indptr, t_indices, t_labels,
           bucket_indptr, bucket_vertices, cap, on_embedding):
    """Backtracking matcher; calls on_embedding(assign) per hit.

    Returns True if enumeration was truncated by the cap.
    """
    pn = len(p_labels)
    tn = len(t_labels)
    n_labels = len(bucket_indptr) - 1
    p_labels = [int(x) for x in p_labels]
    p_back_indptr = [int(x) for x in p_back_indptr]
    p_back = [int(x) for x in p_back]
    t_indptr = [int(x) for x in t_indptr]
    t_indices = [int(x) for x in t_indices]
    t_labels_l = [int(x) for x in t_labels]
    bucket_indptr = [int(x) for x in bucket_indptr]
    bucket_vertices = [int(x) for x in bucket_vertices]

    adj = [t_indices[t_indptr[v]:t_indptr[v + 1]] for v in range(tn)]
    assign = [0] * pn
    used = [False] * tn
    count = 0
    cap = int(cap)

    def candidates(i):
        lab = p_labels[i]
        lo, hi = p_back_indptr[i], p_back_indptr[i + 1]
        backs = p_back[lo:hi]
        if not backs:
            if lab >= n_labels:
                return
            for u in bucket_vertices[bucket_indptr[lab]:bucket_indptr[lab + 1]]:
                if not used[u]:
                    yield u
            return
        first = assign[backs[0]]
        rest = [assign[b] for b in backs[1:]]
        for u in adj[first]:
            if used[u] or t_labels_l[u] != lab:
                continue
            if all(_has(adj[r], u) for r in rest):
                yield u

    def rec(i):
        nonlocal count
        if i == pn:
            on_embedding(assign)
            count += 1
            return cap > 0 and count >= cap
        for u in candidates(i):
            assign[i] = u
            used[u] = True
            stop = rec(i + 1)
            used[u] = False
            if stop:
                return True
        return False

    return rec(0)


def match_embeddings(p_labels, p_back_indptr, p_back, t_indptr, t_indices,
                     t_labels, bucket_indptr, bucket_vertices, cap=-1):
    """All injective label/adjacency-preserving maps, lexicographic order."""
    out = []
    _match(p_labels, p_back_indptr, p_back, t_indptr, t_indices, t_labels,
           bucket_indptr, bucket_vertices, cap, lambda a: out.append(tuple(a)))
    arr = np.array(out, dtype=np.int32)
    if arr.size == 0:
        arr = arr.reshape(0, len(p_labels))
    return arr


def match_image_counts(p_labels, p_back_indptr, p_back, t_indptr, t_indices,
                       t_labels, bucket_indptr, bucket_vertices, cap=-1):
    """Distinct-image counts per pattern vertex over the (capped) embedding list."""
    pn = len(p_labels)
    images = [set() for _ in range(pn)]
    state = {"n": 0}

    def hit(assign):
        state["n"] += 1
        for i in range(pn):
            images[i].add(assign[i])

    truncated = _match(p_labels, p_back_indptr, p_back, t_indptr, t_indices,
                       t_labels, bucket_indptr, bucket_vertices, cap, hit)
    counts = np.array([len(s) for s in images], dtype=np.int64)
    return counts, state["n"], bool(truncated)


def reduce_columns(indptr, indices, dims):
    """Standard persistence column reduction over GF(2) with clearing.

    ``indices[indptr[j]:indptr[j+1]]`` are the boundary rows of column j
    (sorted, all < j). Columns are processed dimension-by-dimension from the
    top down; a column whose row became a pivot in the dimension above is
    cleared without work. Returns ``low`` with the pivot row of each reduced
    column, or -1 where the column reduced to zero.
    """
    m = len(dims)
    low = np.full(m, -1, dtype=np.int64)
    if m == 0:
        return low
    dims = [int(d) for d in dims]
    indptr = [int(x) for x in indptr]
    cols = {}
    pivot_owner = {}
    cleared = [False] * m
    for d in range(max(dims), 0, -1):
        for j in range(m):
            if dims[j] != d or cleared[j]:
                continue
            col = set(int(indices[t]) for t in range(indptr[j], indptr[j + 1]))
            while col:
                r = max(col)
                owner = pivot_owner.get(r)
                if owner is None:
                    pivot_owner[r] = j
                    cols[j] = col
                    low[j] = r
                    cleared[r] = True
                    break
                col ^= cols[owner]
    return low
