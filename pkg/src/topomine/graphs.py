"""Labeled-graph data model, TUDataset text IO, and edge perturbation.

Graphs are immutable after construction: adjacency is stored both as a
frozenset of (u, v) pairs with u < v and as per-vertex sorted neighbor
tuples, so they can be shared freely across threads.
"""

from __future__ import annotations

import random
import warnings
from dataclasses import dataclass, field
from pathlib import Path


class DatasetFormatError(Exception):
    """Malformed or inconsistent dataset files (reported with file and line)."""


class PerturbationError(Exception):
    """Requested perturbation cannot be applied to the graph."""


def _norm_edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


class LabeledGraph:
    """Undirected vertex-labeled graph with dense 0-based vertex ids."""

    __slots__ = ("vertex_count", "edges", "labels", "adj", "__weakref__")

    def __init__(self, vertex_count: int, edges, labels):
        labels = tuple(int(x) for x in labels)
        if len(labels) != vertex_count:
            raise ValueError(f"expected {vertex_count} labels, got {len(labels)}")
        norm = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise ValueError(f"edge ({u}, {v}) references vertex outside [0, {vertex_count})")
            norm.add(_norm_edge(u, v))
        self.vertex_count = vertex_count
        self.edges = frozenset(norm)
        self.labels = labels
        nbrs = [[] for _ in range(vertex_count)]
        for u, v in norm:
            nbrs[u].append(v)
            nbrs[v].append(u)
        self.adj = tuple(tuple(sorted(ns)) for ns in nbrs)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return _norm_edge(u, v) in self.edges

    def relabel(self, perm) -> "LabeledGraph":
        """Apply a vertex permutation: vertex v becomes perm[v]."""
        n = self.vertex_count
        if sorted(perm) != list(range(n)):
            raise ValueError("perm is not a permutation of the vertex ids")
        labels = [0] * n
        for v, lab in enumerate(self.labels):
            labels[perm[v]] = lab
        edges = [(perm[u], perm[v]) for u, v in self.edges]
        return LabeledGraph(n, edges, labels)

    def __eq__(self, other):
        return (
            isinstance(other, LabeledGraph)
            and self.vertex_count == other.vertex_count
            and self.labels == other.labels
            and self.edges == other.edges
        )

    def __hash__(self):
        return hash((self.vertex_count, self.labels, self.edges))

    def __repr__(self):
        return f"LabeledGraph(n={self.vertex_count}, m={self.edge_count})"


@dataclass
class GraphDataset:
    """Ordered collection of graphs with one class label per graph."""

    graphs: list = field(default_factory=list)
    class_labels: list = field(default_factory=list)
    label_alphabet: int = 0
    name: str = "dataset"

    def __post_init__(self):
        if len(self.graphs) != len(self.class_labels):
            raise ValueError(
                f"{len(self.graphs)} graphs but {len(self.class_labels)} class labels"
            )
        seen = set()
        for g in self.graphs:
            seen.update(g.labels)
        if seen and (min(seen) < 0 or max(seen) >= self.label_alphabet):
            raise ValueError(
                f"vertex labels {sorted(seen)} not dense in [0, {self.label_alphabet})"
            )

    def __len__(self):
        return len(self.graphs)

    def union_graph(self) -> tuple[LabeledGraph, list[int]]:
        """Disjoint union of all graphs; returns (union, per-graph vertex offsets)."""
        offsets = []
        total = 0
        labels = []
        edges = []
        for g in self.graphs:
            offsets.append(total)
            labels.extend(g.labels)
            edges.extend((u + total, v + total) for u, v in g.edges)
            total += g.vertex_count
        return LabeledGraph(total, edges, labels), offsets


def _read_int_rows(path: Path, n_cols: int) -> list[tuple[int, ...]]:
    rows = []
    with open(path, "r", newline="") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            parts = [p.strip() for p in line.split(",")]
            if len(parts) < n_cols:
                raise DatasetFormatError(
                    f"{path.name}:{lineno}: expected {n_cols} comma-separated integers, got {line!r}"
                )
            try:
                rows.append(tuple(int(p) for p in parts[:n_cols]))
            except ValueError:
                raise DatasetFormatError(
                    f"{path.name}:{lineno}: non-integer field in {line!r}"
                ) from None
    return rows


def load_tudataset(directory_path, dataset_name: str) -> GraphDataset:
    """Load a dataset in the TUDataset on-disk text format.

    Mandatory files: ``DS_A.txt`` (edge rows, 1-indexed global vertex ids),
    ``DS_graph_indicator.txt`` (graph id per vertex), ``DS_graph_labels.txt``.
    ``DS_node_labels.txt`` is optional (all-zero labels if absent). Directed
    duplicate edge rows collapse to one undirected edge; vertex ids are
    remapped to dense per-graph 0-based ids preserving file order; class
    labels are remapped to dense 0-based ids by first occurrence.
    """
    root = Path(directory_path)
    prefix = root / dataset_name

    def req(suffix: str) -> Path:
        p = Path(f"{prefix}_{suffix}")
        if not p.is_file():
            raise DatasetFormatError(f"missing mandatory file {p.name} in {root}")
        return p

    a_path = req("A.txt")
    ind_path = req("graph_indicator.txt")
    glab_path = req("graph_labels.txt")
    nlab_path = Path(f"{prefix}_node_labels.txt")
    attr_path = Path(f"{prefix}_node_attributes.txt")
    if attr_path.is_file():
        warnings.warn(f"{attr_path.name}: real-valued node attributes are ignored")

    indicator = [r[0] for r in _read_int_rows(ind_path, 1)]
    n_vertices = len(indicator)
    graph_ids = sorted(set(indicator))

    graph_class_rows = [r[0] for r in _read_int_rows(glab_path, 1)]
    if len(graph_class_rows) != len(graph_ids):
        raise DatasetFormatError(
            f"{glab_path.name}:1: {len(graph_class_rows)} class labels but "
            f"{len(graph_ids)} graphs in {ind_path.name}"
        )

    if nlab_path.is_file():
        raw_node_labels = [r[0] for r in _read_int_rows(nlab_path, 1)]
        if len(raw_node_labels) != n_vertices:
            raise DatasetFormatError(
                f"{nlab_path.name}:1: {len(raw_node_labels)} node labels but "
                f"{n_vertices} vertices in {ind_path.name}"
            )
    else:
        raw_node_labels = [0] * n_vertices

    # Node labels densify by sorted value (stable under write/reload);
    # class labels keep first-occurrence order.
    label_map = {lab: i for i, lab in enumerate(sorted(set(raw_node_labels)))}
    node_labels = [label_map[lab] for lab in raw_node_labels]
    class_map: dict[int, int] = {}
    class_labels = []
    for lab in graph_class_rows:
        if lab not in class_map:
            class_map[lab] = len(class_map)
        class_labels.append(class_map[lab])

    # Per-graph dense vertex ids, preserving global file order.
    graph_index = {gid: i for i, gid in enumerate(graph_ids)}
    local_id: list[int] = [0] * n_vertices
    counts = [0] * len(graph_ids)
    vertex_graph = [0] * n_vertices
    for v, gid in enumerate(indicator):
        gi = graph_index[gid]
        vertex_graph[v] = gi
        local_id[v] = counts[gi]
        counts[gi] += 1

    per_graph_edges: list[set] = [set() for _ in graph_ids]
    with open(a_path, "r", newline="") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            parts = [p.strip() for p in line.split(",")]
            try:
                u1, v1 = int(parts[0]), int(parts[1])
            except (ValueError, IndexError):
                raise DatasetFormatError(
                    f"{a_path.name}:{lineno}: expected two comma-separated integers, got {line!r}"
                ) from None
            if not (1 <= u1 <= n_vertices and 1 <= v1 <= n_vertices):
                raise DatasetFormatError(
                    f"{a_path.name}:{lineno}: edge ({u1}, {v1}) references unknown vertex "
                    f"(dataset has {n_vertices} vertices)"
                )
            if u1 == v1:
                raise DatasetFormatError(f"{a_path.name}:{lineno}: self-loop at vertex {u1}")
            gu, gv = vertex_graph[u1 - 1], vertex_graph[v1 - 1]
            if gu != gv:
                raise DatasetFormatError(
                    f"{a_path.name}:{lineno}: edge ({u1}, {v1}) crosses graphs "
                    f"{graph_ids[gu]} and {graph_ids[gv]}"
                )
            per_graph_edges[gu].add(_norm_edge(local_id[u1 - 1], local_id[v1 - 1]))

    per_graph_labels: list[list[int]] = [[] for _ in graph_ids]
    for v in range(n_vertices):
        per_graph_labels[vertex_graph[v]].append(node_labels[v])

    graphs = [
        LabeledGraph(counts[i], per_graph_edges[i], per_graph_labels[i])
        for i in range(len(graph_ids))
    ]
    return GraphDataset(
        graphs=graphs,
        class_labels=class_labels,
        label_alphabet=len(label_map) if label_map else 1,
        name=dataset_name,
    )


def write_tudataset(dataset: GraphDataset, directory_path, dataset_name: str) -> None:
    """Write a dataset back to TUDataset text files (both edge directions)."""
    root = Path(directory_path)
    root.mkdir(parents=True, exist_ok=True)
    prefix = root / dataset_name
    offsets = []
    total = 0
    for g in dataset.graphs:
        offsets.append(total)
        total += g.vertex_count
    with open(f"{prefix}_A.txt", "w") as fh:
        for gi, g in enumerate(dataset.graphs):
            base = offsets[gi] + 1
            for u, v in sorted(g.edges):
                fh.write(f"{base + u}, {base + v}\n")
                fh.write(f"{base + v}, {base + u}\n")
    with open(f"{prefix}_graph_indicator.txt", "w") as fh:
        for gi, g in enumerate(dataset.graphs):
            fh.writelines(f"{gi + 1}\n" for _ in range(g.vertex_count))
    with open(f"{prefix}_graph_labels.txt", "w") as fh:
        fh.writelines(f"{c}\n" for c in dataset.class_labels)
    with open(f"{prefix}_node_labels.txt", "w") as fh:
        for g in dataset.graphs:
            fh.writelines(f"{lab}\n" for lab in g.labels)


def perturb_graph(g: LabeledGraph, mode: str, ratio: float, seed: int) -> LabeledGraph:
    """Randomly remove or add ``floor(ratio * |E|)`` edges, deterministically.

    ``remove`` samples existing edges without replacement; ``add`` samples
    uniformly from the current non-edges (label-agnostic). Labels and vertex
    count never change. A zero edge budget returns the graph unchanged.
    """
    if mode not in ("remove", "add"):
        raise ValueError(f"unknown perturbation mode {mode!r}")
    if not (0.0 < ratio < 1.0):
        raise ValueError(f"ratio must lie in (0, 1), got {ratio}")
    m = int(ratio * g.edge_count)
    if m == 0:
        return g
    rng = random.Random(seed)
    if mode == "remove":
        victims = set(rng.sample(sorted(g.edges), m))
        edges = [e for e in g.edges if e not in victims]
    else:
        non_edges = [
            (u, v)
            for u in range(g.vertex_count)
            for v in range(u + 1, g.vertex_count)
            if (u, v) not in g.edges
        ]
        if m > len(non_edges):
            raise PerturbationError(
                f"add mode needs {m} non-edges but only {len(non_edges)} exist "
                f"(short by {m - len(non_edges)})"
            )
        edges = list(g.edges) + rng.sample(non_edges, m)
    return LabeledGraph(g.vertex_count, edges, g.labels)
