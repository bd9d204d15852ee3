"""Command-line pipeline: mine, filtrate, persist, features, bottleneck,
perturb, classify, export, bench-budget.

Stages communicate through files so each experiment re-runs independently;
every output starts with a comment header echoing the config and seed, and
identical inputs reproduce byte-identical outputs. Exit codes: 0 ok, 2
config error, 3 data error, 4 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import resource
import sys
import time
from pathlib import Path

from topomine import __version__
from topomine.classify import knn_cross_validate
from topomine.features import (
    features_from_diagram,
    read_features_csv,
    write_features_csv,
)
from topomine.filtration import (
    ComplexInvariantError,
    build_degree_filtration,
    build_fsf,
    dump_complex,
    load_complex,
)
from topomine.graphs import (
    DatasetFormatError,
    PerturbationError,
    load_tudataset,
    perturb_graph,
    write_tudataset,
)
from topomine.metrics import run_robustness
from topomine.mining import MiningConfig, load_patterns, mine_frequent, save_patterns
from topomine.parallel import ordered_map
from topomine.persistence import compute_persistence, read_diagrams_csv, write_diagrams_csv


class ConfigError(Exception):
    pass


def _header(args, extra=()):
    keys = sorted(k for k in vars(args) if k not in ("func",))
    lines = [f"topomine {__version__}"]
    lines += [f"{k}={getattr(args, k)}" for k in keys]
    lines += list(extra)
    return lines


def _load_dataset(args):
    return load_tudataset(args.data_dir, args.dataset)


def _parse_dims(spec: str):
    dims = set()
    for part in spec.split(","):
        part = part.strip()
        if "-" in part:
            lo, hi = part.split("-")
            dims.update(range(int(lo), int(hi) + 1))
        elif part:
            dims.add(int(part))
    if not dims or min(dims) < 0:
        raise ConfigError(f"bad dims spec {spec!r}")
    return dims


def _peak_rss_mb() -> float:
    return resource.getrusage(resource.RUSAGE_SELF).ru_maxrss / 1024.0


def cmd_mine(args):
    ds = _load_dataset(args)
    config = MiningConfig(sigma=args.sigma, k=args.k, embedding_budget=args.budget)
    pset = mine_frequent(ds, config)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    save_patterns(pset, out / "patterns.tsv", _header(args))
    stats = {
        "patterns": len(pset),
        "patterns_explored": pset.mining_stats.patterns_explored,
        "embeddings_retained": pset.mining_stats.embeddings_retained,
        "wall_time_s": round(pset.mining_stats.wall_time, 6),
        "peak_rss_mb": round(_peak_rss_mb(), 3),
        "sigma": args.sigma,
        "k": args.k,
        "budget": args.budget,
        "dataset": args.dataset,
    }
    with open(out / "mining_stats.json", "w") as fh:
        json.dump(stats, fh, indent=2, sort_keys=True)
        fh.write("\n")
    print(f"mined {len(pset)} patterns -> {out / 'patterns.tsv'}")
    return 0


def cmd_filtrate(args):
    ds = _load_dataset(args)
    out = Path(args.out_dir) / "complexes"
    out.mkdir(parents=True, exist_ok=True)
    if args.degree:
        builder = build_degree_filtration
    else:
        patterns = load_patterns(args.patterns)
        k = args.k or patterns.max_vertices
        builder = lambda g: build_fsf(g, patterns, k, args.cap)
    complexes = ordered_map(builder, ds.graphs, args.threads)
    for gi, fc in enumerate(complexes):
        dump_complex(fc, out / f"graph_{gi:05d}.txt", _header(args, [f"graph_id={gi}"]))
    print(f"wrote {len(ds)} complexes -> {out}")
    return 0


def cmd_persist(args):
    cdir = Path(args.complexes)
    paths = sorted(cdir.glob("graph_*.txt"))
    if not paths:
        raise DatasetFormatError(f"no complex dumps found under {cdir}")
    diagrams = ordered_map(
        lambda p: compute_persistence(load_complex(p), args.max_dim),
        paths, args.threads)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    write_diagrams_csv(diagrams, out / "diagrams.csv", _header(args))
    print(f"wrote {len(diagrams)} diagrams -> {out / 'diagrams.csv'}")
    return 0


def cmd_features(args):
    ds = _load_dataset(args)
    diagrams = read_diagrams_csv(args.diagrams)
    if len(diagrams) != len(ds):
        raise DatasetFormatError(
            f"{len(diagrams)} diagrams but dataset has {len(ds)} graphs"
        )
    dims = _parse_dims(args.dims)
    import numpy as np

    matrix = np.array([features_from_diagram(d, dims) for d in diagrams])
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    write_features_csv(matrix, ds.class_labels, out / "features.csv", _header(args))
    print(f"wrote {matrix.shape} feature matrix -> {out / 'features.csv'}")
    return 0


def cmd_bottleneck(args):
    ds = _load_dataset(args)
    patterns = load_patterns(args.patterns)
    report = run_robustness(
        ds, patterns,
        modes=args.modes.split(","),
        ratios=[float(r) for r in args.ratios.split(",")],
        seed=args.seed,
        dims=sorted(_parse_dims(args.dims)),
        k=args.k or None,
        cap=args.cap,
        threads=args.threads,
    )
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    report.to_csv(out / "robustness.csv", _header(args))
    print(f"wrote robustness report -> {out / 'robustness.csv'}")
    return 0


def cmd_perturb(args):
    ds = _load_dataset(args)
    perturbed = type(ds)(
        graphs=[perturb_graph(g, args.mode, args.ratio, args.seed + gi)
                for gi, g in enumerate(ds.graphs)],
        class_labels=list(ds.class_labels),
        label_alphabet=ds.label_alphabet,
        name=f"{ds.name}_{args.mode}{args.ratio}",
    )
    write_tudataset(perturbed, args.out_dir, perturbed.name)
    print(f"wrote perturbed dataset {perturbed.name} -> {args.out_dir}")
    return 0


def cmd_classify(args):
    matrix, labels = read_features_csv(args.features)
    report = knn_cross_validate(
        matrix, labels,
        k_neighbors=args.neighbors,
        folds=args.folds,
        seed=args.seed,
        shuffle_labels=args.shuffle_labels,
    )
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    report.config["header"] = _header(args)
    report.to_json(out / "cv_report.json")
    print(f"mean accuracy {report.mean:.4f} (std {report.std:.4f}) -> {out / 'cv_report.json'}")
    return 0


def cmd_export(args):
    ds = _load_dataset(args)
    write_tudataset(ds, args.out_dir, args.dataset)
    print(f"exported {len(ds)} graphs -> {args.out_dir}")
    return 0


def cmd_bench_budget(args):
    ds = _load_dataset(args)
    budgets = []
    for b in args.budgets.split(","):
        b = b.strip().lower()
        budgets.append(None if b in ("inf", "none") else int(b))
    rows = []
    for budget in budgets:
        t0 = time.perf_counter()
        pset = mine_frequent(ds, MiningConfig(sigma=args.sigma, k=args.k, embedding_budget=budget))
        rows.append({
            "budget": "inf" if budget is None else budget,
            "runtime_s": time.perf_counter() - t0,
            "patterns": len(pset),
            "embeddings_retained": pset.mining_stats.embeddings_retained,
        })
    exact = next((r for r in rows if r["budget"] == "inf"), rows[-1])
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    path = out / "budget_sweep.csv"
    with open(path, "w") as fh:
        for line in _header(args):
            fh.write(f"# {line}\n")
        fh.write("budget,runtime_s,patterns,embeddings_retained,"
                 "runtime_norm,patterns_norm,embeddings_norm\n")
        for r in rows:
            fh.write(
                f"{r['budget']},{r['runtime_s']:.6f},{r['patterns']},{r['embeddings_retained']},"
                f"{r['runtime_s'] / max(exact['runtime_s'], 1e-12):.6f},"
                f"{r['patterns'] / max(exact['patterns'], 1):.6f},"
                f"{r['embeddings_retained'] / max(exact['embeddings_retained'], 1):.6f}\n"
            )
    print(f"wrote budget sweep -> {path}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="topomine", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_dataset_args(p):
        p.add_argument("--data-dir", required=True, help="directory with TUDataset text files")
        p.add_argument("--dataset", required=True, help="dataset name prefix (DS)")

    p = sub.add_parser("mine", help="mine MNI-frequent patterns")
    add_dataset_args(p)
    p.add_argument("--sigma", type=int, required=True)
    p.add_argument("--k", type=int, default=4)
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--out-dir", default="out")
    p.set_defaults(func=cmd_mine)

    p = sub.add_parser("filtrate", help="build filtered complexes per graph")
    add_dataset_args(p)
    p.add_argument("--patterns", help="patterns.tsv from mine")
    p.add_argument("--degree", action="store_true", help="degree baseline instead of patterns")
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--cap", type=int, default=None)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--out-dir", default="out")
    p.set_defaults(func=cmd_filtrate)

    p = sub.add_parser("persist", help="compute persistence diagrams from complex dumps")
    p.add_argument("--complexes", required=True, help="directory with graph_*.txt dumps")
    p.add_argument("--max-dim", type=int, default=2)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--out-dir", default="out")
    p.set_defaults(func=cmd_persist)

    p = sub.add_parser("features", help="statistical feature vectors from diagrams")
    add_dataset_args(p)
    p.add_argument("--diagrams", required=True)
    p.add_argument("--dims", default="0-2")
    p.add_argument("--out-dir", default="out")
    p.set_defaults(func=cmd_features)

    p = sub.add_parser("bottleneck", help="perturbation robustness report")
    add_dataset_args(p)
    p.add_argument("--patterns", required=True)
    p.add_argument("--modes", default="remove,add")
    p.add_argument("--ratios", default="0.05,0.1")
    p.add_argument("--dims", default="1")
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--cap", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--out-dir", default="out")
    p.set_defaults(func=cmd_bottleneck)

    p = sub.add_parser("perturb", help="write a perturbed copy of a dataset")
    add_dataset_args(p)
    p.add_argument("--mode", choices=["remove", "add"], required=True)
    p.add_argument("--ratio", type=float, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out-dir", default="out")
    p.set_defaults(func=cmd_perturb)

    p = sub.add_parser("classify", help="k-NN cross-validation on a feature CSV")
    p.add_argument("--features", required=True)
    p.add_argument("--neighbors", type=int, default=5)
    p.add_argument("--folds", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--shuffle-labels", action="store_true")
    p.add_argument("--out-dir", default="out")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("export", help="round-trip a dataset back to TUDataset files")
    add_dataset_args(p)
    p.add_argument("--out-dir", default="out")
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("bench-budget", help="budget sweep normalized by exact mining")
    add_dataset_args(p)
    p.add_argument("--sigma", type=int, required=True)
    p.add_argument("--k", type=int, default=4)
    p.add_argument("--budgets", default="5000,10000,20000,50000,inf")
    p.add_argument("--out-dir", default="out")
    p.set_defaults(func=cmd_bench_budget)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (ConfigError, ValueError) as exc:
        print(f"error: config: {exc}", file=sys.stderr)
        return 2
    except (DatasetFormatError, PerturbationError, FileNotFoundError) as exc:
        print(f"error: data: {exc}", file=sys.stderr)
        return 3
    except ComplexInvariantError as exc:
        print(f"error: invariant: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
