# distutils: language = c++
# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled kernels: embedding matcher and GF(2) column reduction.

Byte-for-byte the same outputs as ``_fallback``; only the inner loops
differ. See that module for the contracts.
"""

import numpy as np

from libc.stdint cimport int64_t
from libcpp.vector cimport vector

BACKEND = "compiled"


cdef inline bint _adjacent(const long long[:] indptr, const int[:] indices,
                           int v, int u) noexcept nogil:
    """Binary search for u in the sorted adjacency of v."""
    cdef long long lo = indptr[v], hi = indptr[v + 1], mid
    while lo < hi:
        mid = (lo + hi) >> 1
        if indices[mid] < u:
            lo = mid + 1
        else:
            hi = mid
    return lo < indptr[v + 1] and indices[lo] == u


cdef long long _match_core(const int[:] p_labels, const long long[:] bp, const int[:] bflat,
                           const long long[:] t_indptr, const int[:] t_indices,
                           const int[:] t_labels,
                           const long long[:] bucket_indptr, const int[:] bucket_vertices,
                           long long cap, int mode,
                           vector[int]& flat_out, vector[char]& seen,
                           long long[:] counts, bint* truncated) except -1:
    """Backtracking search; mode 0 collects embeddings, mode 1 image counts."""
    cdef int pn = p_labels.shape[0]
    cdef int tn = t_labels.shape[0]
    cdef int n_labels = bucket_indptr.shape[0] - 1
    cdef vector[int] assign = vector[int](pn)
    cdef vector[char] used = vector[char](tn, 0)
    cdef vector[int64_t] ptr = vector[int64_t](pn)
    cdef vector[int64_t] hi = vector[int64_t](pn)
    cdef long long n_emb = 0
    cdef int level = 0, u, lab, t, a0
    cdef long long pos
    cdef bint backs, ok

    truncated[0] = False
    if pn == 0:
        return 0

    # Enter level 0.
    lab = p_labels[0]
    if lab >= n_labels:
        return 0
    ptr[0] = bucket_indptr[lab]
    hi[0] = bucket_indptr[lab + 1]

    while level >= 0:
        # Scan for the next valid candidate at this level.
        u = -1
        backs = bp[level + 1] > bp[level]
        while ptr[level] < hi[level]:
            pos = ptr[level]
            ptr[level] = pos + 1
            if backs:
                t = t_indices[pos]
                if t_labels[t] != p_labels[level] or used[t]:
                    continue
                ok = True
                for r in range(bp[level] + 1, bp[level + 1]):
                    if not _adjacent(t_indptr, t_indices, assign[bflat[r]], t):
                        ok = False
                        break
                if not ok:
                    continue
                u = t
            else:
                t = bucket_vertices[pos]
                if used[t]:
                    continue
                u = t
            break
        if u < 0:
            # Exhausted: backtrack.
            level -= 1
            if level >= 0:
                used[assign[level]] = 0
            continue
        assign[level] = u
        used[u] = 1
        if level == pn - 1:
            n_emb += 1
            if mode == 0:
                for t in range(pn):
                    flat_out.push_back(assign[t])
            else:
                for t in range(pn):
                    if not seen[<size_t>t * tn + assign[t]]:
                        seen[<size_t>t * tn + assign[t]] = 1
                        counts[t] += 1
            used[u] = 0
            if cap > 0 and n_emb >= cap:
                truncated[0] = True
                used[u] = 0
                return n_emb
            continue
        # Descend.
        level += 1
        lab = p_labels[level]
        if bp[level + 1] > bp[level]:
            a0 = assign[bflat[bp[level]]]
            ptr[level] = t_indptr[a0]
            hi[level] = t_indptr[a0 + 1]
        else:
            if lab >= n_labels:
                ptr[level] = 0
                hi[level] = 0
            else:
                ptr[level] = bucket_indptr[lab]
                hi[level] = bucket_indptr[lab + 1]
    return n_emb


def match_embeddings(p_labels, bp, bflat, t_indptr, t_indices, t_labels,
                     bucket_indptr, bucket_vertices, cap=-1):
    cdef vector[int] flat
    cdef vector[char] seen
    cdef long long[:] counts = np.zeros(1, dtype=np.int64)
    cdef bint truncated = False
    cdef int pn = len(p_labels)
    _match_core(np.ascontiguousarray(p_labels, dtype=np.int32),
                np.ascontiguousarray(bp, dtype=np.int64),
                np.ascontiguousarray(bflat, dtype=np.int32),
                t_indptr, t_indices, t_labels, bucket_indptr, bucket_vertices,
                -1 if cap is None else cap, 0, flat, seen, counts, &truncated)
    out = np.empty(flat.size(), dtype=np.int32)
    cdef int[:] out_v = out
    cdef size_t i
    for i in range(flat.size()):
        out_v[i] = flat[i]
    return out.reshape(-1, pn) if pn else out.reshape(0, 0)


def match_image_counts(p_labels, bp, bflat, t_indptr, t_indices, t_labels,
                       bucket_indptr, bucket_vertices, cap=-1):
    cdef vector[int] flat
    cdef int pn = len(p_labels)
    cdef int tn = len(t_labels)
    cdef vector[char] seen = vector[char](<size_t>pn * tn, 0)
    counts = np.zeros(pn, dtype=np.int64)
    cdef bint truncated = False
    n_emb = _match_core(np.ascontiguousarray(p_labels, dtype=np.int32),
                        np.ascontiguousarray(bp, dtype=np.int64),
                        np.ascontiguousarray(bflat, dtype=np.int32),
                        t_indptr, t_indices, t_labels, bucket_indptr, bucket_vertices,
                        -1 if cap is None else cap, 1, flat, seen, counts, &truncated)
    return counts, int(n_emb), bool(truncated)


cdef void _symdiff(vector[int]& a, const vector[int]& b, vector[int]& scratch) noexcept nogil:
    """a := a xor b for sorted int vectors, via scratch."""
    cdef size_t i = 0, j = 0
    scratch.clear()
    while i < a.size() and j < b.size():
        if a[i] < b[j]:
            scratch.push_back(a[i]); i += 1
        elif a[i] > b[j]:
            scratch.push_back(b[j]); j += 1
        else:
            i += 1; j += 1
    while i < a.size():
        scratch.push_back(a[i]); i += 1
    while j < b.size():
        scratch.push_back(b[j]); j += 1
    a.swap(scratch)


def reduce_columns(indptr, indices, dims):
    """Column reduction in filtration order with clearing; returns pivots."""
    cdef long long[:] indptr_v = np.ascontiguousarray(indptr, dtype=np.int64)
    cdef int[:] indices_v = np.ascontiguousarray(indices, dtype=np.int32)
    cdef signed char[:] dims_v = np.ascontiguousarray(dims, dtype=np.int8)
    cdef int m = dims_v.shape[0]
    low = np.full(m, -1, dtype=np.int64)
    cdef long long[:] low_v = low
    if m == 0:
        return low
    cdef int max_dim = 0
    cdef int j, d, r, owner
    cdef long long t
    for j in range(m):
        if dims_v[j] > max_dim:
            max_dim = dims_v[j]
    cdef vector[vector[int]] store = vector[vector[int]](m)
    cdef vector[int] pivot_owner = vector[int](m, -1)
    cdef vector[char] cleared = vector[char](m, 0)
    cdef vector[int] cur, scratch
    with nogil:
        for d in range(max_dim, 0, -1):
            for j in range(m):
                if dims_v[j] != d or cleared[j]:
                    continue
                cur.clear()
                for t in range(indptr_v[j], indptr_v[j + 1]):
                    cur.push_back(indices_v[t])
                while cur.size() > 0:
                    r = cur.back()
                    owner = pivot_owner[r]
                    if owner < 0:
                        pivot_owner[r] = j
                        store[j] = cur
                        low_v[j] = r
                        cleared[r] = 1
                        break
                    _symdiff(cur, store[owner], scratch)
    return low
