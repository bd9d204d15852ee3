"""Comparison-table rendering: accuracy rows per method and dataset."""

from __future__ import annotations

from fph_harness.experiment import MethodResult


def results_to_csv(results: list[MethodResult], path, header_lines=()) -> None:
    """One row per (method, dataset): percentage mean and std over folds."""
    with open(path, "w") as fh:
        for line in header_lines:
            fh.write(f"# {line}\n")
        fh.write("method,dataset,accuracy_mean_pct,accuracy_std_pct,folds\n")
        for r in results:
            fh.write(f"{r.method},{r.dataset},{100 * r.mean:.2f},{100 * r.std:.2f},"
                     f"{len(r.fold_accuracies)}\n")


def format_table(results: list[MethodResult]) -> str:
    """Plain-text accuracy table, methods as rows and datasets as columns."""
    datasets = sorted({r.dataset for r in results})
    methods = list(dict.fromkeys(r.method for r in results))
    by_key = {(r.method, r.dataset): r for r in results}
    width = max(12, *(len(d) + 2 for d in datasets))
    lines = ["Method".ljust(10) + "".join(d.rjust(width) for d in datasets)]
    for m in methods:
        cells = []
        for d in datasets:
            r = by_key.get((m, d))
            cells.append(("-" if r is None else
                          f"{100 * r.mean:.2f}±{100 * r.std:.2f}").rjust(width))
        lines.append(m.ljust(10) + "".join(cells))
    return "\n".join(lines)


def bar_chart(results: list[MethodResult], path) -> None:
    """Optional accuracy bar chart (requires matplotlib)."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    labels = [f"{r.method}\n{r.dataset}" for r in results]
    means = [100 * r.mean for r in results]
    stds = [100 * r.std for r in results]
    fig, ax = plt.subplots(figsize=(1.2 * len(results) + 2, 4))
    ax.bar(range(len(results)), means, yerr=stds, capsize=4)
    ax.set_xticks(range(len(results)), labels, fontsize=8)
    ax.set_ylabel("accuracy (%)")
    ax.set_ylim(0, 105)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
