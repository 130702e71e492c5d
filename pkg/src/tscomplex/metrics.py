"""Named metric wrappers and the shared analysis configuration.

Each constructor closes a score function over its parameters and returns a
Metric whose result carries the statistic/df/p-value fields when the
underlying score is a hypothesis test.
"""
from __future__ import annotations

from dataclasses import dataclass, replace

from .core import Metric, MetricResult, Series
from .entropy import PermEnParams, SampEnParams, permutation_entropy, sample_entropy
from .randomness import RunsVariant, permutation_test, runs_test

__all__ = [
    "AnalysisConfig",
    "sampen_metric",
    "permen_metric",
    "permtest_metric",
    "runstest_metric",
    "build_metrics",
    "METRIC_NAMES",
]

METRIC_NAMES = ("sampen", "permen", "permtest", "runstest")

DEFAULT_SCALES = (1, 2, 3, 4, 5, 10)


@dataclass(frozen=True)
class AnalysisConfig:
    """Metric selection and parameters; defaults are the experiment battery's
    conventions (m=2, r=0.2*SD, n=5, t=5, median runs test, scales 1..10)."""

    metrics: tuple[str, ...] = METRIC_NAMES
    m: int = 2
    r_factor: float = 0.2
    r_mode: str = "per_input_sd"
    n: int = 5
    t: int = 5
    runs_variant: RunsVariant = "above_below_median"
    scales: tuple[int, ...] = DEFAULT_SCALES
    seed: int | None = None

    def __post_init__(self):
        unknown = [m for m in self.metrics if m not in METRIC_NAMES]
        if unknown:
            raise ValueError(f"unknown metric(s): {', '.join(unknown)}")

    def with_metrics(self, metrics) -> "AnalysisConfig":
        return replace(self, metrics=tuple(metrics))


def sampen_metric(m: int = 2, r_factor: float = 0.2, r_mode: str = "per_input_sd") -> Metric:
    params = SampEnParams(m=m, r_factor=r_factor, r_mode=r_mode)

    def evaluate(series: Series) -> MetricResult:
        res = sample_entropy(series, params)
        return MetricResult(metric="sampen", value=res.value)

    return Metric("sampen", evaluate)


def permen_metric(n: int = 5, normalize: bool = True) -> Metric:
    params = PermEnParams(n=n, normalize=normalize)

    def evaluate(series: Series) -> MetricResult:
        return MetricResult(metric="permen", value=permutation_entropy(series, params))

    return Metric("permen", evaluate)


def permtest_metric(t: int = 5) -> Metric:
    def evaluate(series: Series) -> MetricResult:
        res = permutation_test(series, t)
        warnings = ()
        if res.low_expected_warning:
            warnings = (f"low expected count ({res.group_count}/{res.df + 1} < 5 per category)",)
        return MetricResult(
            metric="permtest",
            value=res.chi_square,
            statistic=res.chi_square,
            df=float(res.df),
            p_value=res.p_value,
            warnings=warnings,
        )

    return Metric("permtest", evaluate)


def runstest_metric(variant: RunsVariant = "above_below_median") -> Metric:
    def evaluate(series: Series) -> MetricResult:
        res = runs_test(series, variant)
        return MetricResult(
            metric="runstest",
            value=res.z,
            statistic=res.z,
            p_value=res.p_value,
        )

    return Metric("runstest", evaluate)


_BUILDERS = {
    "sampen": lambda c: sampen_metric(c.m, c.r_factor, c.r_mode),
    "permen": lambda c: permen_metric(c.n),
    "permtest": lambda c: permtest_metric(c.t),
    "runstest": lambda c: runstest_metric(c.runs_variant),
}


def build_metrics(config: AnalysisConfig) -> list[Metric]:
    """Metrics selected by the config, in the config's order."""
    return [_BUILDERS[name](config) for name in config.metrics]
