"""Frequent-subgraph filtrations and persistence features for labeled graphs.

Pipeline: mine MNI-frequent patterns on a dataset's union graph, build a
per-graph filtered simplicial complex from pattern embeddings (simplices
enter at 1/support), compute persistence diagrams over GF(2), and turn them
into fixed-length statistical feature vectors for classification.
"""

from topomine.graphs import (
    DatasetFormatError,
    GraphDataset,
    LabeledGraph,
    PerturbationError,
    load_tudataset,
    perturb_graph,
    write_tudataset,
)
from topomine.matching import enumerate_embeddings
from topomine.mining import (
    MiningConfig,
    Pattern,
    PatternSet,
    load_patterns,
    mine_frequent,
    mni_support,
    save_patterns,
)

__version__ = "0.1.0"

__all__ = [
    "DatasetFormatError",
    "GraphDataset",
    "LabeledGraph",
    "MiningConfig",
    "Pattern",
    "PatternSet",
    "PerturbationError",
    "enumerate_embeddings",
    "load_patterns",
    "load_tudataset",
    "mine_frequent",
    "mni_support",
    "perturb_graph",
    "save_patterns",
    "write_tudataset",
]
