"""Filtered simplicial complexes from pattern embeddings and vertex degrees.

The pattern filtration spans a simplex on every embedding's vertex image
set, entering at 1/(pattern support); a simplex induced several times keeps
the smallest value. Faces inherit the inducing value, so closure and
monotonicity hold by construction. Vertices never covered by an embedding
do not appear. The degree filtration is the lower-star baseline: vertex at
deg(v), edge at max of endpoint degrees, rescaled by 1/(max degree + 1).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from topomine.graphs import LabeledGraph
from topomine.matching import enumerate_embeddings


class ComplexInvariantError(Exception):
    """Closure or monotonicity violation in a filtered complex."""


@dataclass(frozen=True)
class FilteredComplex:
    """Simplices as (filtration_value, vertex_tuple), in reduction order.

    Reduction order is (value ascending, dimension ascending, vertex tuple
    lexicographic); ties are broken identically everywhere so downstream
    output is byte-reproducible.
    """

    simplices: tuple

    def __len__(self):
        return len(self.simplices)

    def __iter__(self):
        return iter(self.simplices)

    @property
    def max_dimension(self) -> int:
        return max((len(v) - 1 for _, v in self.simplices), default=-1)

    def value_set(self):
        return sorted({val for val, _ in self.simplices})

    def validate(self) -> None:
        """Check closure, monotonicity, ordering, and value range."""
        index = {verts: val for val, verts in self.simplices}
        if len(index) != len(self.simplices):
            raise ComplexInvariantError("duplicate simplex")
        prev = None
        for val, verts in self.simplices:
            if not (0 <= val <= 1):
                raise ComplexInvariantError(f"value {val} outside [0, 1] at {verts}")
            if tuple(sorted(verts)) != verts:
                raise ComplexInvariantError(f"vertex tuple {verts} not sorted")
            key = (val, len(verts), verts)
            if prev is not None and key < prev:
                raise ComplexInvariantError(f"simplex {verts} out of reduction order")
            prev = key
            if len(verts) > 1:
                for face in combinations(verts, len(verts) - 1):
                    fval = index.get(face)
                    if fval is None:
                        raise ComplexInvariantError(f"missing face {face} of {verts}")
                    if fval > val:
                        raise ComplexInvariantError(
                            f"face {face} at {fval} enters after coface {verts} at {val}"
                        )


def _sorted_complex(values: dict) -> FilteredComplex:
    items = sorted(values.items(), key=lambda kv: (kv[1], len(kv[0]), kv[0]))
    return FilteredComplex(tuple((val, verts) for verts, val in items))


def build_fsf(graph: LabeledGraph, patterns, k: int, cap: int | None = None) -> FilteredComplex:
    """Pattern filtration of one graph from a mined pattern set.

    Every embedding image set of every pattern (with at most k vertices)
    spans a simplex at value 1/support; all faces enter no later. ``cap``
    limits embeddings retained per pattern, mirroring the mining budget.
    """
    best: dict[tuple, Fraction] = {}
    for pat in patterns:
        if pat.vertex_count > k:
            continue
        value = pat.filtration_value
        image_sets = {tuple(sorted(set(emb))) for emb in enumerate_embeddings(pat, graph, cap)}
        for verts in image_sets:
            for size in range(1, len(verts) + 1):
                for face in combinations(verts, size):
                    old = best.get(face)
                    if old is None or value < old:
                        best[face] = value
    return _sorted_complex(best)


def build_degree_filtration(graph: LabeledGraph) -> FilteredComplex:
    """Lower-star filtration on vertex degree, rescaled into [0, 1]."""
    scale = max((graph.degree(v) for v in range(graph.vertex_count)), default=0) + 1
    values: dict[tuple, Fraction] = {}
    for v in range(graph.vertex_count):
        values[(v,)] = Fraction(graph.degree(v), scale)
    for u, v in graph.edges:
        values[(u, v)] = Fraction(max(graph.degree(u), graph.degree(v)), scale)
    return _sorted_complex(values)


def dump_complex(complex_: FilteredComplex, path, header_lines=()) -> None:
    """One simplex per line in reduction order: value TAB v0,v1,..."""
    with open(path, "w") as fh:
        for line in header_lines:
            fh.write(f"# {line}\n")
        for val, verts in complex_.simplices:
            fh.write(f"{val}\t{','.join(str(v) for v in verts)}\n")


def load_complex(path) -> FilteredComplex:
    values = {}
    with open(path, "r") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            try:
                val_s, verts_s = line.split("\t")
                verts = tuple(int(x) for x in verts_s.split(","))
                values[verts] = Fraction(val_s)
            except ValueError:
                raise ValueError(f"{path}:{lineno}: bad simplex line {line!r}") from None
    return _sorted_complex(values)
