"""Metric wrappers and the analysis configuration."""
import pytest

from tscomplex import generate_iid
from tscomplex.metrics import (
    AnalysisConfig,
    build_metrics,
    permtest_metric,
    runstest_metric,
    sampen_metric,
)


class TestAnalysisConfig:
    def test_battery_defaults(self):
        config = AnalysisConfig()
        assert config.metrics == ("sampen", "permen", "permtest", "runstest")
        assert config.m == 2
        assert config.r_factor == 0.2
        assert config.n == 5
        assert config.t == 5
        assert config.scales == (1, 2, 3, 4, 5, 10)
        assert config.runs_variant == "above_below_median"

    def test_unknown_metric_rejected(self):
        with pytest.raises(ValueError, match="unknown metric"):
            AnalysisConfig(metrics=("sampen", "apen"))

    def test_build_metrics_order_follows_config(self):
        config = AnalysisConfig(metrics=("runstest", "sampen"))
        assert [m.name for m in build_metrics(config)] == ["runstest", "sampen"]


class TestMetricResults:
    def test_entropy_metrics_carry_value_only(self):
        s = generate_iid("uniform", 400, seed=1)
        res = sampen_metric()(s)
        assert res.metric == "sampen"
        assert res.statistic is None and res.df is None and res.p_value is None

    def test_permtest_carries_test_fields_and_warning(self):
        s = generate_iid("uniform", 1000, seed=1)
        res = permtest_metric(5)(s)
        assert res.statistic == res.value
        assert res.df == 119.0
        assert 0.0 <= res.p_value <= 1.0
        assert any("low expected count" in w for w in res.warnings)

    def test_runstest_carries_p_value(self):
        s = generate_iid("uniform", 1000, seed=1)
        res = runstest_metric()(s)
        assert res.statistic == res.value
        assert res.df is None
        assert 0.0 <= res.p_value <= 1.0
