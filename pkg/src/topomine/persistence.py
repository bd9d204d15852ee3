"""Persistence diagrams by boundary-matrix reduction over GF(2).

Columns are reduced in filtration order (value, dimension, vertex tuple)
with the clearing optimization, dimension by dimension from the top down.
``betti_numbers`` recomputes ranks of the boundary operators by independent
Gaussian elimination and serves as the oracle for the reduction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from topomine import kernels
from topomine.filtration import ComplexInvariantError, FilteredComplex

INF = None  # death marker for essential classes


@dataclass(frozen=True)
class PersistenceDiagram:
    """Multiset of (dimension, birth, death) points; death=None means +inf.

    Zero-lifetime points are kept here and filtered only during feature
    extraction, so diagrams stay exact for bottleneck computations.
    """

    points: tuple

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def in_dimension(self, dim: int):
        return [p for p in self.points if p[0] == dim]

    def count_at(self, dim: int, value) -> int:
        """Points of one dimension alive at ``value`` (birth <= value < death)."""
        n = 0
        for d, birth, death in self.points:
            if d == dim and birth <= value and (death is None or value < death):
                n += 1
        return n


def _boundary_csr(complex_: FilteredComplex):
    order = {verts: i for i, (_, verts) in enumerate(complex_.simplices)}
    dims = np.empty(len(order), dtype=np.int8)
    indptr = np.zeros(len(order) + 1, dtype=np.int64)
    rows: list[int] = []
    for j, (_, verts) in enumerate(complex_.simplices):
        dims[j] = len(verts) - 1
        if len(verts) > 1:
            faces = []
            for t in range(len(verts)):
                face = verts[:t] + verts[t + 1:]
                fi = order.get(face)
                if fi is None:
                    raise ComplexInvariantError(f"missing face {face} of simplex {verts}")
                faces.append(fi)
            rows.extend(sorted(faces))
        indptr[j + 1] = len(rows)
    return indptr, np.array(rows, dtype=np.int32), dims


def compute_persistence(complex_: FilteredComplex, max_dim: int) -> PersistenceDiagram:
    """Diagram of all points with dimension <= max_dim."""
    if not complex_.simplices:
        return PersistenceDiagram(())
    indptr, rows, dims = _boundary_csr(complex_)
    low = kernels.reduce_columns(indptr, rows, dims)
    values = [val for val, _ in complex_.simplices]
    destroyed = {}
    for j, r in enumerate(low):
        if r >= 0:
            destroyed[int(r)] = j
    points = []
    for i in range(len(values)):
        if low[i] >= 0:
            continue  # i is a destroyer column, not a creator
        dim = int(dims[i])
        if dim > max_dim:
            continue
        j = destroyed.get(i)
        points.append((dim, values[i], values[j] if j is not None else INF))
    points.sort(key=_point_key)
    return PersistenceDiagram(tuple(points))


def _point_key(point):
    dim, birth, death = point
    return (dim, birth, death is None, death if death is not None else 0)


def _gf2_rank(mat: np.ndarray) -> int:
    """Rank over the two-element field by row elimination."""
    m = mat.copy()
    n_rows, n_cols = m.shape
    rank = 0
    for col in range(n_cols):
        pivot = -1
        for row in range(rank, n_rows):
            if m[row, col]:
                pivot = row
                break
        if pivot < 0:
            continue
        m[[rank, pivot]] = m[[pivot, rank]]
        hits = np.nonzero(m[:, col])[0]
        for row in hits:
            if row != rank:
                m[row] ^= m[rank]
        rank += 1
        if rank == n_rows:
            break
    return rank


def betti_numbers(complex_: FilteredComplex, at_value) -> list[int]:
    """Betti numbers of the sublevel complex at ``at_value``.

    Computed directly as rank(kernel) - rank(image) from dense GF(2)
    boundary matrices; independent of the column-reduction path and used as
    its oracle in tests.
    """
    complex_.validate()
    at_value = Fraction(at_value)
    sub = [verts for val, verts in complex_.simplices if val <= at_value]
    if not sub:
        return []
    max_dim = max(len(v) - 1 for v in sub)
    by_dim: list[list[tuple]] = [[] for _ in range(max_dim + 1)]
    for verts in sub:
        by_dim[len(verts) - 1].append(verts)
    index = [{verts: i for i, verts in enumerate(group)} for group in by_dim]

    def boundary_matrix(p: int) -> np.ndarray:
        cols = by_dim[p]
        rows = by_dim[p - 1]
        mat = np.zeros((len(rows), len(cols)), dtype=np.uint8)
        for j, verts in enumerate(cols):
            for t in range(len(verts)):
                face = verts[:t] + verts[t + 1:]
                mat[index[p - 1][face], j] = 1
        return mat

    ranks = [0] * (max_dim + 2)
    for p in range(1, max_dim + 1):
        ranks[p] = _gf2_rank(boundary_matrix(p))
    return [len(by_dim[p]) - ranks[p] - ranks[p + 1] for p in range(max_dim + 1)]


def write_diagrams_csv(diagrams, path, header_lines=()) -> None:
    """CSV rows ``graph_id,dim,birth,death`` with ``inf`` for essential points."""
    with open(path, "w") as fh:
        for line in header_lines:
            fh.write(f"# {line}\n")
        fh.write("graph_id,dim,birth,death\n")
        for gid, diagram in enumerate(diagrams):
            for dim, birth, death in diagram:
                death_s = "inf" if death is None else repr(float(death))
                fh.write(f"{gid},{dim},{float(birth)!r},{death_s}\n")


def read_diagrams_csv(path) -> list[PersistenceDiagram]:
    per_graph: dict[int, list] = {}
    with open(path, "r") as fh:
        for raw in fh:
            line = raw.strip()
            if not line or line.startswith("#") or line.startswith("graph_id"):
                continue
            gid_s, dim_s, birth_s, death_s = line.split(",")
            death = INF if death_s == "inf" else Fraction(death_s)
            per_graph.setdefault(int(gid_s), []).append(
                (int(dim_s), Fraction(birth_s), death)
            )
    n = max(per_graph) + 1 if per_graph else 0
    out = []
    for gid in range(n):
        pts = sorted(per_graph.get(gid, []), key=_point_key)
        out.append(PersistenceDiagram(tuple(pts)))
    return out
