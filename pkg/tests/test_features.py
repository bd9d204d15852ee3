import math
from fractions import Fraction

import numpy as np
import pytest

from topomine.features import (
    extract_features,
    feature_length,
    features_for_dataset,
    features_from_diagram,
    read_features_csv,
    write_features_csv,
)
from topomine.graphs import GraphDataset
from topomine.mining import MiningConfig, mine_frequent
from topomine.persistence import PersistenceDiagram
from topomine.synthetic import two_class_dataset


def diagram(points):
    return PersistenceDiagram(tuple(points))


class TestSpecExamples:
    def test_empty_diagram_is_zero_vector(self):
        vec = extract_features(diagram([]), d=2)
        assert vec.shape == (22,)  # 7*3 + 1
        assert not vec.any()

    def test_single_essential_point(self):
        vec = extract_features(diagram([(0, Fraction(1, 4), None)]), d=0)
        # lifetime 0.75 after capping at 1; single atom: std 0, entropy 0
        assert vec == pytest.approx([0.75, 0.75, 0.75, 0.75, 0.0, 1.0, 0.0, 0.0])

    def test_two_equal_points_entropy_ln2(self):
        d = diagram([(0, Fraction(0), Fraction(1, 2)), (0, Fraction(0), Fraction(1, 2))])
        vec = extract_features(d, d=0)
        assert vec[6] == pytest.approx(math.log(2))
        assert vec[7] == pytest.approx(1.0)  # P_tot: both pairs finite

    def test_total_persistence_skips_infinite(self):
        d = diagram([(0, Fraction(1, 4), None), (1, Fraction(1, 4), Fraction(3, 4))])
        vec = extract_features(d, d=1)
        assert vec[-1] == pytest.approx(0.5)


class TestBlockRules:
    def test_zero_lifetime_points_dropped(self):
        d = diagram([(0, Fraction(1, 2), Fraction(1, 2)), (0, Fraction(1, 4), Fraction(1, 2))])
        vec = extract_features(d, d=0)
        assert vec[5] == 1.0  # count excludes the zero-lifetime pair
        assert vec[0] == pytest.approx(0.25)

    def test_block_zeroed_when_dimension_empty(self):
        d = diagram([(1, Fraction(0), Fraction(1, 2))])
        vec = extract_features(d, d=2)
        assert not vec[0:7].any()      # H0 block
        assert vec[7:14].any()         # H1 block
        assert not vec[14:21].any()    # H2 block

    def test_median_and_std(self):
        d = diagram([(0, Fraction(0), Fraction(1, 4)),
                     (0, Fraction(0), Fraction(1, 2)),
                     (0, Fraction(0), Fraction(1))])
        vec = extract_features(d, d=0)
        lifetimes = np.array([0.25, 0.5, 1.0])
        assert vec[3] == pytest.approx(0.5)                 # median
        assert vec[4] == pytest.approx(lifetimes.std())     # population std
        assert vec[2] <= vec[3] <= vec[1]

    def test_scale_coherence(self):
        rng = np.random.default_rng(0)
        for _ in range(20):
            pts = []
            for _ in range(int(rng.integers(0, 8))):
                b = Fraction(int(rng.integers(0, 4)), 4)
                death = None if rng.random() < 0.3 else min(
                    b + Fraction(int(rng.integers(1, 5)), 4), Fraction(1))
                pts.append((int(rng.integers(0, 3)), b, death))
            vec = extract_features(diagram(pts), d=2)
            for p in range(3):
                block = vec[7 * p: 7 * p + 7]
                assert all(0 <= x <= 1 for x in block[:5])
                assert block[6] >= 0


class TestDatasetMatrix:
    def setup_method(self):
        self.ds = two_class_dataset(10, seed=4, n_min=10, n_max=14, n_labels=2)
        self.ps = mine_frequent(self.ds, MiningConfig(sigma=4, k=3))

    def test_shape_full_dims(self):
        X = features_for_dataset(self.ds, self.ps, dims={0, 1, 2})
        assert X.shape == (10, 22)

    def test_dims_subset_layout(self):
        X = features_for_dataset(self.ds, self.ps, dims={1})
        assert X.shape == (10, 8)  # one block + P_tot
        full = features_for_dataset(self.ds, self.ps, dims={0, 1, 2})
        assert np.allclose(X[:, 0:7], full[:, 7:14])
        assert np.allclose(X[:, 7], full[:, 21])

    def test_feature_length_helper(self):
        assert feature_length({0, 1, 2}) == 22
        assert feature_length({1}) == 8

    def test_isomorphism_invariance_end_to_end(self):
        rng = np.random.default_rng(9)
        g = self.ds.graphs[3]
        perm = list(rng.permutation(g.vertex_count))
        ds2 = GraphDataset(graphs=[g, g.relabel(perm)], class_labels=[0, 0],
                           label_alphabet=self.ds.label_alphabet)
        X = features_for_dataset(ds2, self.ps, dims={0, 1, 2})
        assert np.array_equal(X[0], X[1])

    def test_padding_is_local(self):
        d_with = diagram([(0, Fraction(0), Fraction(1, 2)), (1, Fraction(1, 4), Fraction(3, 4))])
        d_without = diagram([(0, Fraction(0), Fraction(1, 2))])
        v1 = features_from_diagram(d_with, [0, 1])
        v2 = features_from_diagram(d_without, [0, 1])
        assert np.allclose(v1[0:7], v2[0:7])
        assert not v2[7:14].any()


class TestCsvContract:
    def test_roundtrip(self, tmp_path):
        ds = two_class_dataset(6, seed=2, n_min=8, n_max=12, n_labels=2)
        ps = mine_frequent(ds, MiningConfig(sigma=3, k=3))
        X = features_for_dataset(ds, ps, dims={0, 1})
        path = tmp_path / "features.csv"
        write_features_csv(X, ds.class_labels, path, header_lines=["cfg=1"])
        text = path.read_text()
        assert text.startswith("# cfg=1\n")
        assert text.splitlines()[1].startswith("graph_id,class,f_0")
        back, labels = read_features_csv(path)
        assert labels == ds.class_labels
        assert np.array_equal(back, X)
