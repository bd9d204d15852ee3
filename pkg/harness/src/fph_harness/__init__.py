"""SVC nested cross-validation harness over topomine feature CSVs."""

from fph_harness.experiment import (
    ExperimentSpec,
    FeatureCsvError,
    MethodResult,
    read_features_csv,
    run_svc_protocol,
)
from fph_harness.tables import bar_chart, format_table, results_to_csv

__version__ = "0.1.0"

__all__ = [
    "ExperimentSpec",
    "FeatureCsvError",
    "MethodResult",
    "bar_chart",
    "format_table",
    "read_features_csv",
    "results_to_csv",
    "run_svc_protocol",
]
