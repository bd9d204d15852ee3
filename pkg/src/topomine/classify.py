"""Self-contained k-NN cross-validation over feature vectors.

Deterministic stratified folding, per-fold z-scoring fit on the training
rows only, Euclidean majority vote with nearest-neighbor tie-breaking. The
optional label shuffle (applied once, before folding) is the chance-level
control run.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np


@dataclass
class CVReport:
    fold_accuracies: list
    mean: float
    std: float
    config: dict = field(default_factory=dict)

    def to_json(self, path=None) -> str:
        payload = {
            "folds": self.fold_accuracies,
            "mean": self.mean,
            "std": self.std,
            "config": self.config,
        }
        text = json.dumps(payload, indent=2, sort_keys=True)
        if path is not None:
            with open(path, "w") as fh:
                fh.write(text + "\n")
        return text


def stratified_folds(labels, folds: int, rng: np.random.Generator):
    """Per-class round-robin assignment after a seeded shuffle.

    Fold sizes differ by at most one and class proportions per fold stay
    within one sample of the global mix.
    """
    labels = np.asarray(labels)
    assignment = np.empty(len(labels), dtype=np.int64)
    cursor = 0
    for cls in np.unique(labels):
        idx = np.nonzero(labels == cls)[0]
        if len(idx) < folds:
            raise ValueError(
                f"class {cls} has {len(idx)} members, fewer than {folds} folds"
            )
        idx = idx[rng.permutation(len(idx))]
        for t, row in enumerate(idx):
            assignment[row] = (cursor + t) % folds
        cursor += len(idx)
    return assignment


def _knn_predict(train_x, train_y, test_x, k: int) -> np.ndarray:
    preds = np.empty(len(test_x), dtype=train_y.dtype)
    for t, x in enumerate(test_x):
        dist = np.sqrt(((train_x - x) ** 2).sum(axis=1))
        order = np.lexsort((np.arange(len(dist)), dist))[:k]
        votes: dict[int, int] = {}
        for j in order:
            votes[int(train_y[j])] = votes.get(int(train_y[j]), 0) + 1
        top = max(votes.values())
        tied = {c for c, v in votes.items() if v == top}
        if len(tied) == 1:
            preds[t] = tied.pop()
        else:
            for j in order:  # nearest neighbor among tied classes wins
                if int(train_y[j]) in tied:
                    preds[t] = train_y[j]
                    break
    return preds


def knn_cross_validate(features, labels, k_neighbors: int = 5, folds: int = 10,
                       seed: int = 0, shuffle_labels: bool = False) -> CVReport:
    x = np.asarray(features, dtype=np.float64)
    y = np.asarray(labels, dtype=np.int64)
    if len(x) != len(y):
        raise ValueError("features and labels disagree in length")
    if len(y) < folds:
        raise ValueError(f"{len(y)} rows cannot fill {folds} folds")
    rng = np.random.default_rng(seed)
    if shuffle_labels:
        y = y[rng.permutation(len(y))]
    assignment = stratified_folds(y, folds, rng)
    accs = []
    for f in range(folds):
        test = assignment == f
        train = ~test
        mu = x[train].mean(axis=0)
        sd = x[train].std(axis=0)
        sd[sd == 0] = 1.0
        tx, sx = (x[train] - mu) / sd, (x[test] - mu) / sd
        preds = _knn_predict(tx, y[train], sx, k_neighbors)
        accs.append(float((preds == y[test]).mean()))
    mean = float(np.mean(accs))
    std = float(np.std(accs))
    return CVReport(
        fold_accuracies=accs,
        mean=mean,
        std=std,
        config={
            "k_neighbors": k_neighbors,
            "folds": folds,
            "seed": seed,
            "shuffle_labels": shuffle_labels,
            "n_rows": int(len(y)),
            "n_features": int(x.shape[1]) if x.ndim == 2 else 0,
        },
    )
