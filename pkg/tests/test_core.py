"""Core types, summary stats, coarse-graining, rescaling."""
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tscomplex import (
    DataError,
    Series,
    coarse_grain,
    generate_iid,
    rescale_for_plot,
    summary,
)

from conftest import make_series


class TestSeries:
    def test_rejects_empty(self):
        with pytest.raises(DataError, match="empty input"):
            Series([])

    def test_rejects_nan_and_inf(self):
        with pytest.raises(DataError, match="non-finite"):
            Series([1.0, float("nan"), 2.0])
        with pytest.raises(DataError, match="non-finite"):
            Series([1.0, float("inf")])

    def test_values_are_read_only(self):
        s = make_series([1, 2, 3])
        with pytest.raises(ValueError):
            s.values[0] = 9.0

    def test_length_one_allowed(self):
        assert len(Series([4.2])) == 1


class TestSummary:
    def test_symmetric_three_points(self):
        stats = summary(make_series([1, 2, 3]))
        assert stats.mean == 2.0
        assert stats.sd == 1.0
        assert stats.minimum == 1.0
        assert stats.maximum == 3.0
        assert stats.n == 3
        assert stats.sd_divisor == "n-1"

    def test_constant(self):
        stats = summary(make_series([5, 5, 5, 5]))
        assert stats.mean == 5.0
        assert stats.sd == 0.0

    def test_uniform_sd_band(self):
        # theoretical sd of Uniform(0,1) is 1/sqrt(12) ~ 0.2887
        s = generate_iid("uniform", 1000, seed=7)
        assert 0.26 <= summary(s).sd <= 0.32

    def test_population_divisor_recorded(self):
        stats = summary(make_series([1, 2, 3]), population=True)
        assert stats.sd_divisor == "n"
        assert stats.sd == pytest.approx(math.sqrt(2.0 / 3.0))


class TestCoarseGrain:
    def test_block_means(self):
        out = coarse_grain(make_series([1, 2, 3, 4, 5, 6]), 2)
        assert out.values.tolist() == [1.5, 3.5, 5.5]

    def test_scale_one_is_identity(self):
        s = make_series([3.0, 1.0, 4.0])
        out = coarse_grain(s, 1)
        assert out.values.tolist() == s.values.tolist()

    def test_remainder_dropped(self):
        s = generate_iid("uniform", 1000, seed=1)
        assert len(coarse_grain(s, 3)) == 333

    def test_remainder_mean_mode(self):
        s = make_series([1, 2, 3, 4, 5])
        out = coarse_grain(s, 2, partial="mean")
        assert out.values.tolist() == [1.5, 3.5, 5.0]
        assert len(coarse_grain(s, 2)) == 2

    @pytest.mark.parametrize("scale", [0, -1, 7])
    def test_invalid_scale(self, scale):
        with pytest.raises(DataError, match="invalid scale"):
            coarse_grain(make_series([1, 2, 3, 4, 5, 6]), scale)

    @given(n=st.integers(1, 400), scale=st.integers(1, 400), seed=st.integers(0, 2**32 - 1))
    @settings(max_examples=60, deadline=None)
    def test_length_and_mean_preservation(self, n, scale, seed):
        rng = np.random.Generator(np.random.PCG64(seed))
        s = Series(rng.normal(size=n))
        if scale > n:
            with pytest.raises(DataError):
                coarse_grain(s, scale)
            return
        out = coarse_grain(s, scale)
        nblocks = n // scale
        assert len(out) == nblocks
        lhs = out.values.sum() * scale
        rhs = s.values[: nblocks * scale].sum()
        assert lhs == pytest.approx(rhs, rel=1e-9)


class TestRescale:
    def test_minmax(self):
        assert rescale_for_plot([0, 5, 10], "minmax") == [0.0, 0.5, 1.0]

    def test_inv_ln(self):
        assert rescale_for_plot([math.e], "inv_ln") == [pytest.approx(1.0)]

    def test_inv_abs(self):
        assert rescale_for_plot([-2, 4], "inv_abs") == [0.5, 0.25]

    def test_minmax_needs_two_distinct(self):
        with pytest.raises(DataError, match="distinct"):
            rescale_for_plot([3, 3, 3], "minmax")

    def test_inv_ln_rejects_scores_not_above_one(self):
        with pytest.raises(DataError, match="0.5"):
            rescale_for_plot([2.0, 0.5], "inv_ln")

    def test_inv_abs_rejects_zero(self):
        with pytest.raises(DataError, match="nonzero"):
            rescale_for_plot([1.0, 0.0], "inv_abs")

    @given(st.lists(st.floats(-1e6, 1e6, allow_nan=False), min_size=2, max_size=40).filter(
        lambda v: len(set(v)) >= 2))
    @settings(max_examples=60, deadline=None)
    def test_minmax_range_and_endpoints(self, values):
        out = rescale_for_plot(values, "minmax")
        assert all(0.0 <= v <= 1.0 for v in out)
        assert 0.0 in out and 1.0 in out
