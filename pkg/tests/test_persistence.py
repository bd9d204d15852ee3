from fractions import Fraction

import numpy as np
import pytest

from oracles import random_complex
from topomine.filtration import (
    ComplexInvariantError,
    FilteredComplex,
    build_degree_filtration,
    build_fsf,
)
from topomine.graphs import GraphDataset, LabeledGraph
from topomine.mining import MiningConfig, mine_frequent
from topomine.persistence import (
    betti_numbers,
    compute_persistence,
    read_diagrams_csv,
    write_diagrams_csv,
)
from topomine.synthetic import random_graph


def full_complex_at(simplex_sets, value):
    from itertools import combinations

    best = {}
    for verts in simplex_sets:
        verts = tuple(sorted(verts))
        for s in range(1, len(verts) + 1):
            for face in combinations(verts, s):
                best[face] = value
    items = sorted(best.items(), key=lambda kv: (kv[1], len(kv[0]), kv[0]))
    return FilteredComplex(tuple((val, verts) for verts, val in items))


class TestSpecExamples:
    def test_empty_complex(self):
        assert len(compute_persistence(FilteredComplex(()), 2)) == 0

    def test_single_triangle_contractible(self):
        v = Fraction(1, 2)
        fc = full_complex_at([(0, 1, 2)], v)
        diag = compute_persistence(fc, 2)
        h0 = diag.in_dimension(0)
        assert [p for p in h0 if p[2] is None] == [(0, v, None)]
        # everything else is zero-lifetime
        assert all(p[1] == p[2] for p in diag if p[2] is not None)
        assert all(p[1] == p[2] for p in diag.in_dimension(1) if p[2] is not None)

    def test_subdivided_triangle_one_essential_h1(self, subdivided_triangle):
        ds = GraphDataset(graphs=[subdivided_triangle], class_labels=[0], label_alphabet=6)
        ps = mine_frequent(ds, MiningConfig(sigma=1, k=3))
        fc = build_fsf(subdivided_triangle, ps, k=3)
        diag = compute_persistence(fc, 2)
        essential_h1 = [p for p in diag.in_dimension(1) if p[2] is None]
        assert len(essential_h1) == 1
        # independent rank oracle agrees
        assert betti_numbers(fc, Fraction(1))[1] == 1

    def test_hollow_triangle_betti(self):
        fc = full_complex_at([(0, 1), (1, 2), (0, 2)], Fraction(1, 3))
        assert betti_numbers(fc, Fraction(1)) == [1, 1]

    def test_four_isolated_vertices(self):
        fc = FilteredComplex(tuple((Fraction(0), (v,)) for v in range(4)))
        assert betti_numbers(fc, Fraction(1)) == [4]

    def test_degree_filtration_pairs(self):
        g = LabeledGraph(3, [(0, 1), (1, 2)], [0, 0, 0])
        diag = compute_persistence(build_degree_filtration(g), 1)
        h0 = diag.in_dimension(0)
        assert (0, Fraction(1, 3), None) in h0
        assert (0, Fraction(1, 3), Fraction(2, 3)) in h0


class TestOracleEquivalence:
    @pytest.mark.parametrize("seed", range(15))
    def test_point_count_identity(self, seed):
        rng = np.random.default_rng(seed)
        fc = random_complex(rng, n_vertices=9, n_top=8, max_card=4)
        max_dim = fc.max_dimension
        diag = compute_persistence(fc, max_dim)
        for v in fc.value_set():
            betti = betti_numbers(fc, v)
            for p in range(max_dim + 1):
                expected = betti[p] if p < len(betti) else 0
                assert diag.count_at(p, v) == expected, (seed, v, p)

    @pytest.mark.parametrize("seed", range(5))
    def test_euler_characteristic(self, seed):
        rng = np.random.default_rng(100 + seed)
        fc = random_complex(rng, n_vertices=8, n_top=7, max_card=4)
        top = fc.value_set()[-1]
        betti = betti_numbers(fc, top)
        chi_simplices = sum((-1) ** (len(v) - 1) for _, v in fc.simplices)
        chi_betti = sum((-1) ** p * b for p, b in enumerate(betti))
        assert chi_simplices == chi_betti


class TestDimensionBound:
    @pytest.mark.parametrize("k", [3, 4])
    def test_top_dimension_points_are_essential(self, k):
        rng = np.random.default_rng(k)
        for _ in range(5):
            g = random_graph(rng, 8, 12, 2, extra_edge_prob=0.6)
            ds = GraphDataset(graphs=[g], class_labels=[0], label_alphabet=2)
            ps = mine_frequent(ds, MiningConfig(sigma=1, k=k))
            fc = build_fsf(g, ps, k=k)
            diag = compute_persistence(fc, k)
            assert all(p[0] <= k - 1 for p in diag)
            for p in diag.in_dimension(k - 1):
                assert p[2] is None


class TestRobustnessToTieOrder:
    def test_vertex_relabeling_preserves_diagram(self):
        rng = np.random.default_rng(5)
        g = random_graph(rng, 7, 10, 2, extra_edge_prob=0.7)
        ds = GraphDataset(graphs=[g], class_labels=[0], label_alphabet=2)
        ps = mine_frequent(ds, MiningConfig(sigma=1, k=3))
        d1 = compute_persistence(build_fsf(g, ps, k=3), 2)
        perm = list(rng.permutation(g.vertex_count))
        d2 = compute_persistence(build_fsf(g.relabel(perm), ps, k=3), 2)
        assert sorted(d1.points, key=repr) == sorted(d2.points, key=repr)


class TestErrors:
    def test_closure_violation_names_simplex(self):
        broken = FilteredComplex(((Fraction(1, 2), (0, 1)),))
        with pytest.raises(ComplexInvariantError, match=r"\(0, 1\)"):
            compute_persistence(broken, 1)


class TestCsv:
    def test_roundtrip(self, tmp_path, subdivided_triangle):
        ds = GraphDataset(graphs=[subdivided_triangle], class_labels=[0], label_alphabet=6)
        ps = mine_frequent(ds, MiningConfig(sigma=1, k=3))
        diag = compute_persistence(build_fsf(subdivided_triangle, ps, k=3), 2)
        path = tmp_path / "diagrams.csv"
        write_diagrams_csv([diag, diag], path, header_lines=["cfg"])
        back = read_diagrams_csv(path)
        assert len(back) == 2
        for orig, loaded in zip([diag, diag], back):
            got = [(d, float(b), None if dd is None else float(dd)) for d, b, dd in loaded]
            want = [(d, float(b), None if dd is None else float(dd)) for d, b, dd in orig]
            assert got == want
