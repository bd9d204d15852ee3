import json
from pathlib import Path

import pytest

from topomine.cli import main
from topomine.graphs import write_tudataset
from topomine.synthetic import two_class_dataset


@pytest.fixture(scope="module")
def data_dir(tmp_path_factory):
    root = tmp_path_factory.mktemp("data")
    ds = two_class_dataset(12, seed=6, n_min=10, n_max=14, n_labels=2)
    write_tudataset(ds, root, "DEMO")
    return root


def run(*argv):
    return main([str(a) for a in argv])


class TestPipeline:
    def test_full_pipeline(self, data_dir, tmp_path):
        out = tmp_path / "out"
        assert run("mine", "--data-dir", data_dir, "--dataset", "DEMO",
                   "--sigma", "5", "--k", "3", "--out-dir", out) == 0
        assert (out / "patterns.tsv").exists()
        stats = json.loads((out / "mining_stats.json").read_text())
        assert stats["patterns"] > 0 and stats["wall_time_s"] >= 0
        assert "peak_rss_mb" in stats

        assert run("filtrate", "--data-dir", data_dir, "--dataset", "DEMO",
                   "--patterns", out / "patterns.tsv", "--out-dir", out) == 0
        complexes = sorted((out / "complexes").glob("graph_*.txt"))
        assert len(complexes) == 12

        assert run("persist", "--complexes", out / "complexes",
                   "--max-dim", "2", "--out-dir", out) == 0
        assert (out / "diagrams.csv").read_text().count("\n") > 12

        assert run("features", "--data-dir", data_dir, "--dataset", "DEMO",
                   "--diagrams", out / "diagrams.csv", "--dims", "0-2",
                   "--out-dir", out) == 0
        header = [l for l in (out / "features.csv").read_text().splitlines()
                  if l.startswith("graph_id")][0]
        assert header.endswith("f_21")

        assert run("classify", "--features", out / "features.csv",
                   "--folds", "3", "--out-dir", out) == 0
        report = json.loads((out / "cv_report.json").read_text())
        assert 0 <= report["mean"] <= 1 and len(report["folds"]) == 3

        assert run("bottleneck", "--data-dir", data_dir, "--dataset", "DEMO",
                   "--patterns", out / "patterns.tsv", "--modes", "remove",
                   "--ratios", "0.1", "--dims", "1", "--out-dir", out) == 0
        assert (out / "robustness.csv").exists()

        assert run("bench-budget", "--data-dir", data_dir, "--dataset", "DEMO",
                   "--sigma", "5", "--k", "3", "--budgets", "2,10,inf",
                   "--out-dir", out) == 0
        sweep = (out / "budget_sweep.csv").read_text()
        assert "patterns_norm" in sweep

        assert run("export", "--data-dir", data_dir, "--dataset", "DEMO",
                   "--out-dir", tmp_path / "export") == 0
        assert (tmp_path / "export" / "DEMO_A.txt").exists()

        assert run("perturb", "--data-dir", data_dir, "--dataset", "DEMO",
                   "--mode", "remove", "--ratio", "0.2", "--seed", "3",
                   "--out-dir", tmp_path / "pert") == 0
        assert (tmp_path / "pert" / "DEMO_remove0.2_A.txt").exists()

    def test_outputs_reproducible(self, data_dir, tmp_path):
        a, b = tmp_path / "a", tmp_path / "b"
        for out in (a, b):
            assert run("mine", "--data-dir", data_dir, "--dataset", "DEMO",
                       "--sigma", "5", "--k", "3", "--out-dir", out) == 0
        pa = (a / "patterns.tsv").read_text()
        pb = (b / "patterns.tsv").read_text()
        # headers echo the out-dir path; the payload must be identical
        strip = lambda text: [l for l in text.splitlines() if not l.startswith("#")]
        assert strip(pa) == strip(pb)

    def test_degree_filtration_mode(self, data_dir, tmp_path):
        out = tmp_path / "deg"
        assert run("filtrate", "--data-dir", data_dir, "--dataset", "DEMO",
                   "--degree", "--out-dir", out) == 0
        text = sorted((out / "complexes").glob("graph_*.txt"))[0].read_text()
        assert "\t" in text


class TestExitCodes:
    def test_unknown_flag_is_config_error(self, data_dir):
        assert run("mine", "--data-dir", data_dir, "--dataset", "DEMO",
                   "--sigma", "1", "--nope") == 2

    def test_bad_sigma_is_config_error(self, data_dir, tmp_path):
        assert run("mine", "--data-dir", data_dir, "--dataset", "DEMO",
                   "--sigma", "0", "--out-dir", tmp_path) == 2

    def test_missing_dataset_is_data_error(self, tmp_path):
        assert run("mine", "--data-dir", tmp_path, "--dataset", "NOPE",
                   "--sigma", "1", "--out-dir", tmp_path) == 3

    def test_missing_intermediate_is_data_error(self, tmp_path):
        assert run("persist", "--complexes", tmp_path / "nowhere",
                   "--out-dir", tmp_path) == 3
