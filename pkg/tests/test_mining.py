from fractions import Fraction

import numpy as np
import pytest

from oracles import brute_mine, brute_mni
from topomine.dfscode import code_from_bytes, minimum_dfs_code
from topomine.graphs import GraphDataset, LabeledGraph
from topomine.mining import (
    MiningConfig,
    Pattern,
    load_patterns,
    mine_frequent,
    mni_support,
    save_patterns,
)
from topomine.synthetic import random_dataset


def single_graph_dataset(g, n_labels):
    return GraphDataset(graphs=[g], class_labels=[0], label_alphabet=n_labels)


class TestMniSupport:
    def test_edge_in_aba_path(self):
        path = LabeledGraph(3, [(0, 1), (1, 2)], [0, 1, 0])
        pat = Pattern.from_parts([0, 1], [(0, 1)])
        assert mni_support(pat, path) == 1

    def test_zero_when_absent(self):
        target = LabeledGraph(2, [(0, 1)], [0, 0])
        pat = Pattern.from_parts([1, 1], [(0, 1)])
        assert mni_support(pat, target) == 0

    def test_triangle_in_k4(self):
        k4 = LabeledGraph(4, [(i, j) for i in range(4) for j in range(i + 1, 4)], [0] * 4)
        pat = Pattern.from_parts([0, 0, 0], [(0, 1), (1, 2), (0, 2)])
        assert mni_support(pat, k4) == 4

    def test_capped_is_lower_bound(self):
        k4 = LabeledGraph(4, [(i, j) for i in range(4) for j in range(i + 1, 4)], [0] * 4)
        pat = Pattern.from_parts([0, 0, 0], [(0, 1), (1, 2), (0, 2)])
        exact = mni_support(pat, k4)
        for cap in (1, 3, 7, 24):
            assert mni_support(pat, k4, cap) <= exact


class TestMineSpecExamples:
    def test_triangle_sigma1_k3(self, triangle):
        ds = single_graph_dataset(triangle, 1)
        ps = mine_frequent(ds, MiningConfig(sigma=1, k=3))
        got = {(p.vertex_labels, tuple(sorted(p.edges))) for p in ps}
        assert got == {
            ((0, 0), ((0, 1),)),
            ((0, 0, 0), ((0, 1), (1, 2))),
            ((0, 0, 0), ((0, 1), (0, 2), (1, 2))),
        }
        assert all(p.mni_support == 3 for p in ps)

    def test_sigma_above_vertex_count_empty(self, triangle):
        ds = single_graph_dataset(triangle, 1)
        assert len(mine_frequent(ds, MiningConfig(sigma=4, k=3))) == 0

    def test_config_validation(self):
        with pytest.raises(ValueError):
            MiningConfig(sigma=0, k=3)
        with pytest.raises(ValueError):
            MiningConfig(sigma=1, k=1)
        with pytest.raises(ValueError):
            MiningConfig(sigma=1, k=3, embedding_budget=0)


class TestOracleEquivalence:
    @pytest.mark.parametrize("seed", range(10))
    def test_small_random_datasets(self, seed):
        rng = np.random.default_rng(seed)
        ds = random_dataset(rng, int(rng.integers(1, 4)), 2, 5, 2, extra_edge_prob=0.8)
        union, _ = ds.union_graph()
        if union.vertex_count > 12:
            ds.graphs = ds.graphs[:2]
            ds.class_labels = ds.class_labels[:2]
        sigma = int(rng.integers(1, 3))
        k = int(rng.integers(2, 5))
        mined = mine_frequent(ds, MiningConfig(sigma=sigma, k=k))
        expected = brute_mine(ds, sigma, k)
        got = {code_from_bytes(p.canonical_code): p.mni_support for p in mined}
        assert got == expected


class TestProperties:
    def test_downward_closure(self):
        rng = np.random.default_rng(77)
        ds = random_dataset(rng, 3, 3, 6, 2, extra_edge_prob=0.6)
        union, _ = ds.union_graph()
        ps = mine_frequent(ds, MiningConfig(sigma=1, k=4))
        for p in ps:
            if p.vertex_count < 3:
                continue
            for drop in range(p.vertex_count):
                keep = [v for v in range(p.vertex_count) if v != drop]
                edges = [(u, v) for u, v in p.edges if drop not in (u, v)]
                remap = {v: i for i, v in enumerate(keep)}
                sub_edges = [(remap[u], remap[v]) for u, v in edges]
                sub_labels = [p.vertex_labels[v] for v in keep]
                try:
                    minimum_dfs_code(sub_labels, sub_edges)  # connectivity check
                except ValueError:
                    continue
                assert brute_mni(sub_labels, sub_edges, union) >= p.mni_support

    def test_sorted_by_support_then_code(self):
        rng = np.random.default_rng(3)
        ds = random_dataset(rng, 4, 4, 7, 2)
        ps = mine_frequent(ds, MiningConfig(sigma=1, k=3))
        keys = [(-p.mni_support, p.canonical_code) for p in ps]
        assert keys == sorted(keys)

    def test_filtration_value(self):
        pat = Pattern.from_parts([0, 0], [(0, 1)], mni_support=4)
        assert pat.filtration_value == Fraction(1, 4)
        with pytest.raises(ValueError):
            _ = Pattern.from_parts([0, 0], [(0, 1)], 0).filtration_value


class TestBudget:
    def setup_method(self):
        rng = np.random.default_rng(11)
        self.ds = random_dataset(rng, 6, 5, 9, 2, extra_edge_prob=0.5)

    def test_budget_monotone_and_exact_at_inf(self):
        budgets = [1, 3, 10, 100, None]
        sets = []
        for b in budgets:
            ps = mine_frequent(self.ds, MiningConfig(sigma=2, k=4, embedding_budget=b))
            sets.append({p.canonical_code: p.mni_support for p in ps})
        for small, big in zip(sets, sets[1:]):
            assert set(small) <= set(big)
        exact = mine_frequent(self.ds, MiningConfig(sigma=2, k=4))
        assert sets[-1] == {p.canonical_code: p.mni_support for p in exact}

    def test_budget_support_is_lower_bound(self):
        exact = {p.canonical_code: p.mni_support
                 for p in mine_frequent(self.ds, MiningConfig(sigma=1, k=3))}
        capped = mine_frequent(self.ds, MiningConfig(sigma=1, k=3, embedding_budget=5))
        for p in capped:
            assert p.mni_support <= exact[p.canonical_code]


class TestSerialization:
    def test_roundtrip(self, tmp_path):
        rng = np.random.default_rng(2)
        ds = random_dataset(rng, 4, 4, 8, 3)
        ps = mine_frequent(ds, MiningConfig(sigma=1, k=4))
        assert len(ps) > 0
        path = tmp_path / "patterns.tsv"
        save_patterns(ps, path, header_lines=["test"])
        back = load_patterns(path)
        assert [(p.canonical_code, p.mni_support, p.vertex_labels, p.edges) for p in back] \
            == [(p.canonical_code, p.mni_support, p.vertex_labels, p.edges) for p in ps]

    def test_no_duplicate_codes(self):
        rng = np.random.default_rng(4)
        ds = random_dataset(rng, 3, 4, 7, 2)
        ps = mine_frequent(ds, MiningConfig(sigma=1, k=4))
        codes = [p.canonical_code for p in ps]
        assert len(codes) == len(set(codes))
