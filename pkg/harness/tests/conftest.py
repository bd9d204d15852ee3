"""Fixtures produce feature CSVs by driving the primary pipeline through its
command-line interface, the integration surface this harness consumes."""

import subprocess
import sys
from pathlib import Path

import pytest


def run_primary(*argv):
    proc = subprocess.run([sys.executable, "-m", "topomine.cli", *map(str, argv)],
                          capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr + proc.stdout
    return proc


def make_features(root: Path, name: str, n_graphs: int, seed: int, sigma: int) -> Path:
    data = root / "data"
    out = root / name.lower()
    subprocess.run([sys.executable, "-m", "topomine.synthetic", str(data),
                    "--name", name, "--graphs", str(n_graphs), "--seed", str(seed)],
                   check=True, capture_output=True)
    run_primary("mine", "--data-dir", data, "--dataset", name,
                "--sigma", sigma, "--k", "4", "--out-dir", out)
    run_primary("filtrate", "--data-dir", data, "--dataset", name,
                "--patterns", out / "patterns.tsv", "--out-dir", out)
    run_primary("persist", "--complexes", out / "complexes",
                "--max-dim", "2", "--out-dir", out)
    run_primary("features", "--data-dir", data, "--dataset", name,
                "--diagrams", out / "diagrams.csv", "--dims", "0-2", "--out-dir", out)
    return out / "features.csv"


@pytest.fixture(scope="session")
def aids_features(tmp_path_factory) -> Path:
    return make_features(tmp_path_factory.mktemp("aids"), "AIDS_LIKE",
                         n_graphs=300, seed=7, sigma=90)


@pytest.fixture(scope="session")
def proteins_features(tmp_path_factory) -> Path:
    return make_features(tmp_path_factory.mktemp("prot"), "PROTEINS_LIKE",
                         n_graphs=300, seed=11, sigma=60)
