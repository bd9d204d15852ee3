"""Statistical feature vectors from persistence diagrams.

Per homology dimension: [mean, max, min, median, std, count, entropy] of
the bar lifetimes after capping infinite deaths at 1 and dropping
zero-lifetime bars; a trailing total-persistence entry sums (death - birth)
over the genuinely finite bars of every dimension, before the cap. Empty
blocks are zero-padded, so the vector length is fixed at 7*(d+1)+1.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from topomine.filtration import build_fsf
from topomine.graphs import GraphDataset
from topomine.parallel import ordered_map
from topomine.persistence import PersistenceDiagram, compute_persistence

BLOCK = 7


def _lifetimes(diagram: PersistenceDiagram, dim: int) -> np.ndarray:
    ls = []
    for d, birth, death in diagram:
        if d != dim:
            continue
        dd = Fraction(1) if death is None else death
        life = dd - birth
        if life > 0:
            ls.append(float(life))
    return np.array(ls, dtype=np.float64)


def _block(lifetimes: np.ndarray) -> np.ndarray:
    if lifetimes.size == 0:
        return np.zeros(BLOCK)
    total = lifetimes.sum()
    probs = lifetimes / total
    entropy = float(-(probs * np.log(probs)).sum()) if total > 0 else 0.0
    return np.array([
        lifetimes.mean(),
        lifetimes.max(),
        lifetimes.min(),
        float(np.median(lifetimes)),
        lifetimes.std(),
        float(lifetimes.size),
        entropy,
    ])


def total_persistence(diagram: PersistenceDiagram) -> float:
    """Sum of (death - birth) over finite-death points of all dimensions."""
    return float(sum((death - birth) for _, birth, death in diagram if death is not None))


def extract_features(diagram: PersistenceDiagram, d: int) -> np.ndarray:
    """The 7*(d+1)+1 vector over dimensions 0..d plus total persistence."""
    blocks = [_block(_lifetimes(diagram, p)) for p in range(d + 1)]
    return np.concatenate(blocks + [[total_persistence(diagram)]])


def feature_length(dims) -> int:
    return BLOCK * len(dims) + 1


def features_for_dataset(dataset: GraphDataset, patterns, dims,
                         k: int | None = None, cap: int | None = None,
                         threads: int = 1) -> np.ndarray:
    """Stack per-graph vectors; ``dims`` selects which homology blocks appear.

    Excluded dimensions are omitted from the layout entirely (the ablation
    interface), so a ``dims={1}`` matrix has 8 columns. Rows are collected
    by graph index, so the matrix is thread-count-invariant.
    """
    dims = sorted(dims)
    if k is not None and dims and dims[-1] > k - 1:
        raise ValueError(f"dims {dims} exceed the pattern dimension bound k-1={k - 1}")
    if k is None:
        k = patterns.max_vertices

    def row(g):
        diagram = compute_persistence(build_fsf(g, patterns, k, cap), max(dims))
        return features_from_diagram(diagram, dims)

    rows = ordered_map(row, dataset.graphs, threads)
    return np.array(rows) if rows else np.zeros((0, feature_length(dims)))


def features_from_diagram(diagram: PersistenceDiagram, dims) -> np.ndarray:
    blocks = [_block(_lifetimes(diagram, p)) for p in sorted(dims)]
    return np.concatenate(blocks + [[total_persistence(diagram)]])


def write_features_csv(matrix: np.ndarray, class_labels, path, header_lines=()) -> None:
    """The classifier-facing contract: ``graph_id,class,f_0,...,f_{N'-1}``."""
    n_feat = matrix.shape[1] if matrix.size else 0
    with open(path, "w") as fh:
        for line in header_lines:
            fh.write(f"# {line}\n")
        cols = ",".join(f"f_{t}" for t in range(n_feat))
        fh.write(f"graph_id,class,{cols}\n" if n_feat else "graph_id,class\n")
        for gid, row in enumerate(matrix):
            vals = ",".join(repr(float(x)) for x in row)
            fh.write(f"{gid},{class_labels[gid]},{vals}\n")


def read_features_csv(path):
    """Returns (matrix, class_labels)."""
    rows, labels = [], []
    with open(path, "r") as fh:
        for raw in fh:
            line = raw.strip()
            if not line or line.startswith("#") or line.startswith("graph_id"):
                continue
            parts = line.split(",")
            labels.append(int(parts[1]))
            rows.append([float(x) for x in parts[2:]])
    return np.array(rows), labels
