"""Minimum DFS codes: canonical forms for small connected labeled patterns.

A DFS code is the edge sequence of a depth-first traversal, each edge
written as (i, j, label_i, label_j) over discovery indices. Backward edges
are emitted the moment their endpoint is discovered (ascending ancestor
index), which makes the code a function of the discovery order alone. The
minimum over all discovery orders is the canonical form: identical for
isomorphic patterns, distinct for non-isomorphic ones.
"""

from __future__ import annotations

import struct
from functools import cmp_to_key


def edge_tuple_cmp(e1, e2) -> int:
    """gSpan linear order on DFS-code edge tuples (no edge labels)."""
    i1, j1, a1, b1 = e1
    i2, j2, a2, b2 = e2
    f1, f2 = i1 < j1, i2 < j2
    if f1 != f2:
        if not f1:  # e1 backward, e2 forward
            return -1 if i1 < j2 else 1
        return -1 if j1 <= i2 else 1
    if f1:  # both forward: smaller target, then deeper source
        k1, k2 = (j1, -i1), (j2, -i2)
    else:  # both backward: smaller source, then smaller target
        k1, k2 = (i1, j1), (i2, j2)
    if k1 != k2:
        return -1 if k1 < k2 else 1
    if (a1, b1) != (a2, b2):
        return -1 if (a1, b1) < (a2, b2) else 1
    return 0


_EDGE_KEY = cmp_to_key(edge_tuple_cmp)


def code_cmp(c1, c2) -> int:
    """Lexicographic comparison of two DFS codes under the edge order."""
    for e1, e2 in zip(c1, c2):
        r = edge_tuple_cmp(e1, e2)
        if r:
            return r
    return (len(c1) > len(c2)) - (len(c1) < len(c2))


class _Traversal:
    """One partial DFS traversal: discovery order plus forced backward queue."""

    __slots__ = ("order", "idx", "rmp", "pending", "coded")

    def __init__(self, order, idx, rmp, pending, coded):
        self.order = order      # graph vertices in discovery order
        self.idx = idx          # graph vertex -> discovery index (-1 if unseen)
        self.rmp = rmp          # rightmost path, as discovery indices
        self.pending = pending  # forced backward tuples not yet emitted
        self.coded = coded      # number of edges emitted so far


def _start(u, v, labels):
    n = len(labels)
    idx = [-1] * n
    idx[u], idx[v] = 0, 1
    return _Traversal([u, v], idx, [0, 1], [], 1)


def _discover(st: _Traversal, w_pos: int, x: int, adj, labels):
    """Extend st by the tree edge rmp[w_pos] -> x; None if not a valid DFS step."""
    nidx = len(st.order)
    parent_idx = st.rmp[w_pos]
    backs = []
    for y in adj[x]:
        yi = st.idx[y]
        if yi >= 0 and yi != parent_idx:
            backs.append(yi)
    # Every already-discovered neighbor must be an ancestor (no cross edges).
    ancestors = set(st.rmp[: w_pos + 1])
    if any(yi not in ancestors for yi in backs):
        return None
    backs.sort()
    idx = list(st.idx)
    idx[x] = nidx
    lab = labels[x]
    pending = [(nidx, yi, lab, labels[st.order[yi]]) for yi in backs]
    return _Traversal(st.order + [x], idx, st.rmp[: w_pos + 1] + [nidx], pending, st.coded + 1)


def _candidates(st: _Traversal, adj, labels):
    """(tuple, move) pairs available from st, unsorted."""
    if st.pending:
        return [(st.pending[0], ("pop", None, None))]
    out = []
    nidx = len(st.order)
    for pos in range(len(st.rmp) - 1, -1, -1):
        w = st.order[st.rmp[pos]]
        for x in adj[w]:
            if st.idx[x] < 0:
                out.append(((st.rmp[pos], nidx, labels[w], labels[x]), ("fwd", pos, x)))
    return out


def _apply(st: _Traversal, move, adj, labels):
    kind, pos, x = move
    if kind == "pop":
        nst = _Traversal(st.order, st.idx, st.rmp, st.pending[1:], st.coded + 1)
        return nst
    return _discover(st, pos, x, adj, labels)


def minimum_dfs_code(vertex_labels, edges):
    """Exact minimum DFS code of a connected pattern with >= 1 edge.

    Depth-first search over all traversals, pruned against the best complete
    code found so far; exact for the small patterns mined here.
    """
    labels = tuple(int(x) for x in vertex_labels)
    n = len(labels)
    edge_list = sorted({(u, v) if u < v else (v, u) for u, v in edges})
    m = len(edge_list)
    if m == 0:
        raise ValueError("patterns must have at least one edge")
    adj = [[] for _ in range(n)]
    for u, v in edge_list:
        adj[u].append(v)
        adj[v].append(u)
    for a in adj:
        a.sort()
    if not _connected(n, adj):
        raise ValueError("pattern is not connected")

    best: list = [None]

    def rec(st: _Traversal, code: list):
        if best[0] is not None:
            r = 0
            for t in range(len(code)):
                r = edge_tuple_cmp(code[t], best[0][t])
                if r:
                    break
            if r > 0:
                return
        if st.coded == m:
            if best[0] is None or code_cmp(code, best[0]) < 0:
                best[0] = list(code)
            return
        cands = _candidates(st, adj, labels)
        cands.sort(key=lambda c: _EDGE_KEY(c[0]))
        for tup, move in cands:
            nst = _apply(st, move, adj, labels)
            if nst is None:
                continue
            code.append(tup)
            rec(nst, code)
            code.pop()

    starts = []
    for u, v in edge_list:
        starts.append(((0, 1, labels[u], labels[v]), (u, v)))
        starts.append(((0, 1, labels[v], labels[u]), (v, u)))
    starts.sort(key=lambda c: _EDGE_KEY(c[0]))
    for tup, (u, v) in starts:
        st = _start(u, v, labels)
        # Root edge may immediately owe backward edges? No: v's discovered
        # neighbors are just u at this point, so pending is always empty.
        rec(st, [tup])
    assert best[0] is not None
    return tuple(best[0])


def _connected(n, adj) -> bool:
    if n == 0:
        return False
    seen = {0}
    stack = [0]
    while stack:
        for y in adj[stack.pop()]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == n


def rightmost_path(code):
    """Rightmost path (discovery indices, root first) of a valid DFS code."""
    rmp = [0, 1]
    for i, j, _, _ in code[1:]:
        if i < j:  # forward
            rmp = rmp[: rmp.index(i) + 1] + [j]
    return rmp


def code_labels(code):
    """Discovery-index -> vertex label map encoded in the code."""
    labels = {0: code[0][2], 1: code[0][3]}
    for i, j, a, b in code[1:]:
        if i < j:
            labels[j] = b
    return [labels[t] for t in range(len(labels))]


def code_edges(code):
    return [((i, j) if i < j else (j, i)) for i, j, _, _ in code]


def rightmost_extensions(code, alphabet: int, max_vertices: int):
    """All syntactic rightmost-path extensions of a DFS code.

    Backward edges from the rightmost vertex to rightmost-path vertices, and
    forward edges from every rightmost-path vertex with every label in the
    alphabet. Non-canonical children are weeded out by the is-min test.
    """
    rmp = rightmost_path(code)
    labels = code_labels(code)
    n = len(labels)
    present = set(code_edges(code))
    out = []
    r = rmp[-1]
    for j in rmp[:-2]:
        if ((j, r) if j < r else (r, j)) not in present:
            out.append(code + ((r, j, labels[r], labels[j]),))
    if n < max_vertices:
        for w in reversed(rmp):
            for lab in range(alphabet):
                out.append(code + ((w, n, labels[w], lab),))
    return out


def is_min(code) -> bool:
    """True when the code is the minimum DFS code of the pattern it encodes."""
    return code_cmp(code, minimum_dfs_code(code_labels(code), code_edges(code))) == 0


def code_to_bytes(code) -> bytes:
    return b"".join(struct.pack("<BBHH", i, j, a, b) for i, j, a, b in code)


def code_from_bytes(blob: bytes):
    if len(blob) % 6:
        raise ValueError("canonical code blob length must be a multiple of 6")
    return tuple(struct.unpack("<BBHH", blob[t : t + 6]) for t in range(0, len(blob), 6))
