"""tscomplex: entropy measures and randomness tests for univariate series.

Scores: sample entropy, normalized permutation entropy; tests: ordinal
permutation test, runs test (median and up/down variants); plus multi-scale
sweeps, seeded generators, file ingestion, report/plot emission, and a
harness that regenerates the reference experiment tables.
"""
from .core import (
    DataError,
    Metric,
    MetricResult,
    NumericalError,
    Series,
    SummaryStats,
    coarse_grain,
    rescale_for_plot,
    summary,
)
from .entropy import (
    MseProfile,
    PermEnParams,
    SampEnParams,
    SampEnResult,
    mse_sweep,
    ordinal_pattern_counts,
    permutation_entropy,
    sample_entropy,
)
from .randomness import (
    PermutationTestResult,
    RunsTestResult,
    TTestResult,
    chi_square_sf,
    normal_sf,
    permutation_test,
    runs_test,
    welch_t_test,
)
from .generators import (
    GeneratorSpec,
    add_noise,
    arma_simulate,
    build_series,
    derive_rng,
    derive_seed,
    generate_iid,
    logistic_map,
)
from .metrics import AnalysisConfig, build_metrics
from .seriesio import SeriesFile, read_series, write_series
from .report import ExperimentReport, ReportRow, read_report_json, write_report
from .plots import write_plot
from .experiments import compare_groups, reproduce

__version__ = "0.1.0"

__all__ = [
    "AnalysisConfig",
    "DataError",
    "ExperimentReport",
    "GeneratorSpec",
    "Metric",
    "MetricResult",
    "MseProfile",
    "NumericalError",
    "PermEnParams",
    "PermutationTestResult",
    "ReportRow",
    "RunsTestResult",
    "SampEnParams",
    "SampEnResult",
    "Series",
    "SeriesFile",
    "SummaryStats",
    "TTestResult",
    "add_noise",
    "arma_simulate",
    "build_metrics",
    "build_series",
    "chi_square_sf",
    "coarse_grain",
    "compare_groups",
    "derive_rng",
    "derive_seed",
    "generate_iid",
    "logistic_map",
    "mse_sweep",
    "normal_sf",
    "ordinal_pattern_counts",
    "permutation_entropy",
    "permutation_test",
    "read_report_json",
    "read_series",
    "reproduce",
    "rescale_for_plot",
    "runs_test",
    "sample_entropy",
    "summary",
    "welch_t_test",
    "write_plot",
    "write_report",
    "write_series",
]
