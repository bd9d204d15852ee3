"""Nested cross-validation SVC protocol over exported feature CSVs.

Outer stratified folds score a model whose hyperparameters are chosen by an
inner grid search on the training fold only; scaler and grid search live
inside one pipeline, so nothing is fit on test rows. Random-label mode
permutes the labels once (seeded) before folding: the chance-level control.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from sklearn.model_selection import GridSearchCV, StratifiedKFold
from sklearn.pipeline import Pipeline
from sklearn.preprocessing import StandardScaler
from sklearn.svm import SVC


class FeatureCsvError(Exception):
    """Malformed feature CSV (reported with the offending row)."""


DEFAULT_C_GRID = (0.1, 1.0, 10.0, 100.0)
DEFAULT_GAMMA_GRID = ("scale", 0.001, 0.01, 0.1, 1.0)


@dataclass
class ExperimentSpec:
    fph_csv: str
    dataset: str
    dph_csv: str | None = None
    outer_folds: int = 10
    inner_folds: int = 3
    c_grid: tuple = DEFAULT_C_GRID
    gamma_grid: tuple = DEFAULT_GAMMA_GRID
    seed: int = 0
    random_labels: bool = False

    def __post_init__(self):
        if not self.c_grid or not self.gamma_grid:
            raise ValueError("hyperparameter grids must be non-empty")
        if self.outer_folds < 2 or self.inner_folds < 2:
            raise ValueError("outer and inner folds must both be >= 2")


@dataclass
class MethodResult:
    method: str
    dataset: str
    fold_accuracies: list
    mean: float
    std: float
    best_params: list = field(default_factory=list)


def read_features_csv(path):
    """Parse the primary's ``graph_id,class,f_0,...`` contract."""
    rows, labels = [], []
    width = None
    with open(path, "r") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#") or line.startswith("graph_id"):
                continue
            parts = line.split(",")
            try:
                labels.append(int(parts[1]))
                row = [float(x) for x in parts[2:]]
            except (IndexError, ValueError):
                raise FeatureCsvError(f"{path}:{lineno}: malformed row {line!r}") from None
            if width is None:
                width = len(row)
            elif len(row) != width:
                raise FeatureCsvError(
                    f"{path}:{lineno}: row has {len(row)} features, expected {width}"
                )
            rows.append(row)
    if not rows:
        raise FeatureCsvError(f"{path}: no feature rows found")
    return np.array(rows), np.array(labels)


def nested_svc_scores(x, y, spec: ExperimentSpec):
    """One nested-CV pass; returns (fold accuracies, best params per fold)."""
    rng = np.random.default_rng(spec.seed)
    if spec.random_labels:
        y = y[rng.permutation(len(y))]
    pipe = Pipeline([("scale", StandardScaler()), ("svc", SVC(kernel="rbf"))])
    grid = {"svc__C": list(spec.c_grid), "svc__gamma": list(spec.gamma_grid)}
    outer = StratifiedKFold(n_splits=spec.outer_folds, shuffle=True, random_state=spec.seed)
    accs, params = [], []
    for train, test in outer.split(x, y):
        inner = StratifiedKFold(n_splits=spec.inner_folds, shuffle=True,
                                random_state=spec.seed)
        search = GridSearchCV(pipe, grid, cv=inner, n_jobs=1)
        search.fit(x[train], y[train])
        accs.append(float(search.score(x[test], y[test])))
        params.append(search.best_params_)
    return accs, params


def run_svc_protocol(spec: ExperimentSpec) -> list[MethodResult]:
    """Nested CV for the FPH features and, when given, the DPH baseline."""
    sources = [("FPH", spec.fph_csv)]
    if spec.dph_csv:
        sources.append(("DPH", spec.dph_csv))
    results = []
    for method, path in sources:
        x, y = read_features_csv(path)
        accs, params = nested_svc_scores(x, y, spec)
        name = f"{method}-RL" if spec.random_labels else method
        results.append(MethodResult(
            method=name,
            dataset=spec.dataset,
            fold_accuracies=accs,
            mean=float(np.mean(accs)),
            std=float(np.std(accs)),
            best_params=params,
        ))
    return results
