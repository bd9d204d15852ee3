"""Runner: nested-CV SVC over feature CSVs, emitting a comparison table.

    fph-harness --fph out/features.csv --dataset AIDS --out results.csv
"""

from __future__ import annotations

import argparse
import sys

from fph_harness.experiment import ExperimentSpec, FeatureCsvError, run_svc_protocol
from fph_harness.tables import bar_chart, format_table, results_to_csv


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="fph-harness", description=__doc__)
    parser.add_argument("--fph", required=True, help="FPH feature CSV from the primary pipeline")
    parser.add_argument("--dph", default=None, help="optional DPH baseline feature CSV")
    parser.add_argument("--dataset", required=True)
    parser.add_argument("--outer-folds", type=int, default=10)
    parser.add_argument("--inner-folds", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--random-labels", action="store_true")
    parser.add_argument("--out", default="results.csv")
    parser.add_argument("--plot", default=None, help="optional bar-chart PNG path")
    args = parser.parse_args(argv)
    try:
        spec = ExperimentSpec(
            fph_csv=args.fph,
            dph_csv=args.dph,
            dataset=args.dataset,
            outer_folds=args.outer_folds,
            inner_folds=args.inner_folds,
            seed=args.seed,
            random_labels=args.random_labels,
        )
        results = run_svc_protocol(spec)
    except FeatureCsvError as exc:
        print(f"error: data: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: config: {exc}", file=sys.stderr)
        return 2
    results_to_csv(results, args.out, header_lines=[f"seed={args.seed}"])
    print(format_table(results))
    if args.plot:
        bar_chart(results, args.plot)
        print(f"wrote {args.plot}")
    print(f"wrote {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
