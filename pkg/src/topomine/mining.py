"""MNI-frequent pattern mining on the disjoint union of a graph dataset.

Pattern growth is gSpan-style rightmost-path extension over minimum DFS
codes; support is the minimum node image (MNI) measure evaluated on the
union graph, optionally capped by an embedding budget. MNI is anti-monotone
under single-edge extension, so support pruning is exact when the budget is
unset; with a budget, reported supports are deterministic lower bounds and
the reported set grows monotonically with the budget.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction

from topomine import dfscode
from topomine.graphs import GraphDataset, LabeledGraph
from topomine.matching import image_counts


@dataclass(frozen=True)
class Pattern:
    """Connected labeled pattern with its dataset-level MNI support."""

    vertex_labels: tuple
    edges: frozenset
    canonical_code: bytes
    mni_support: int

    def __post_init__(self):
        if len(self.vertex_labels) < 2 or not self.edges:
            raise ValueError("patterns need >= 2 vertices and >= 1 edge")
        if self.mni_support < 0:
            raise ValueError("support must be non-negative")

    @property
    def vertex_count(self) -> int:
        return len(self.vertex_labels)

    @property
    def filtration_value(self) -> Fraction:
        if self.mni_support < 1:
            raise ValueError("filtration value undefined for zero-support patterns")
        return Fraction(1, self.mni_support)

    @classmethod
    def from_parts(cls, vertex_labels, edges, mni_support: int = 0) -> "Pattern":
        code = dfscode.minimum_dfs_code(vertex_labels, edges)
        norm = frozenset((u, v) if u < v else (v, u) for u, v in edges)
        return cls(tuple(int(x) for x in vertex_labels), norm,
                   dfscode.code_to_bytes(code), int(mni_support))

    @classmethod
    def from_code(cls, code, mni_support: int = 0) -> "Pattern":
        return cls(tuple(dfscode.code_labels(code)),
                   frozenset(dfscode.code_edges(code)),
                   dfscode.code_to_bytes(code), int(mni_support))


@dataclass(frozen=True)
class MiningConfig:
    sigma: int
    k: int
    embedding_budget: int | None = None

    def __post_init__(self):
        if self.sigma < 1:
            raise ValueError(f"sigma must be >= 1, got {self.sigma}")
        if self.k < 2:
            raise ValueError(f"k must be >= 2, got {self.k}")
        if self.embedding_budget is not None and self.embedding_budget < 1:
            raise ValueError("embedding_budget must be positive when set")


@dataclass
class MiningStats:
    patterns_explored: int = 0
    embeddings_retained: int = 0
    wall_time: float = 0.0


@dataclass
class PatternSet:
    """Mined patterns sorted by (descending support, ascending canonical code)."""

    patterns: list = field(default_factory=list)
    mining_stats: MiningStats = field(default_factory=MiningStats)

    def __len__(self):
        return len(self.patterns)

    def __iter__(self):
        return iter(self.patterns)

    def sort(self):
        self.patterns.sort(key=lambda p: (-p.mni_support, p.canonical_code))
        codes = [p.canonical_code for p in self.patterns]
        if len(set(codes)) != len(codes):
            raise ValueError("duplicate canonical codes in pattern set")

    @property
    def max_vertices(self) -> int:
        return max((p.vertex_count for p in self.patterns), default=2)


def mni_support(pattern, union_graph: LabeledGraph, cap: int | None = None) -> int:
    """min over pattern vertices of the number of distinct image vertices.

    With ``cap`` the minimum runs over the images of the first ``cap``
    embeddings in enumeration order: a lower bound on the exact support.
    """
    counts, _, _ = image_counts(pattern, union_graph, cap)
    return int(counts.min()) if len(counts) else 0


def mine_frequent(dataset: GraphDataset, config: MiningConfig) -> PatternSet:
    """All connected patterns with 2..k vertices and (capped) MNI >= sigma."""
    if not dataset.graphs:
        raise ValueError("dataset is empty")
    union, _ = dataset.union_graph()
    alphabet = dataset.label_alphabet
    budget = config.embedding_budget
    result = PatternSet()
    stats = result.mining_stats
    t0 = time.perf_counter()

    def grow(code):
        stats.patterns_explored += 1
        pat = Pattern.from_code(code)
        counts, n_emb, _ = image_counts(pat, union, budget)
        support = int(counts.min()) if len(counts) else 0
        if support < config.sigma:
            return
        result.patterns.append(Pattern.from_code(code, support))
        stats.embeddings_retained += n_emb
        for child in dfscode.rightmost_extensions(code, alphabet, config.k):
            if dfscode.is_min(child):
                grow(child)

    seed_pairs = sorted({
        tuple(sorted((union.labels[u], union.labels[v]))) for u, v in union.edges
    })
    for la, lb in seed_pairs:
        grow(((0, 1, la, lb),))

    stats.wall_time = time.perf_counter() - t0
    result.sort()
    return result


def save_patterns(pset: PatternSet, path, header_lines=()) -> None:
    """One pattern per line: support, 1/support, code hex, labels, edges."""
    with open(path, "w") as fh:
        for line in header_lines:
            fh.write(f"# {line}\n")
        for p in pset.patterns:
            labels = ",".join(str(x) for x in p.vertex_labels)
            edges = ",".join(f"{u}-{v}" for u, v in sorted(p.edges))
            fh.write(f"{p.mni_support}\t{p.filtration_value}\t"
                     f"{p.canonical_code.hex()}\t{labels}\t{edges}\n")


def load_patterns(path) -> PatternSet:
    pset = PatternSet()
    with open(path, "r") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 5:
                raise ValueError(f"{path}:{lineno}: expected 5 tab-separated fields")
            support = int(parts[0])
            code = bytes.fromhex(parts[2])
            labels = tuple(int(x) for x in parts[3].split(","))
            edges = frozenset(
                tuple(int(x) for x in e.split("-")) for e in parts[4].split(",")
            )
            pat = Pattern(labels, edges, code, support)
            if Fraction(parts[1]) != pat.filtration_value:
                raise ValueError(f"{path}:{lineno}: filtration value mismatch")
            pset.patterns.append(pat)
    pset.sort()
    return pset
