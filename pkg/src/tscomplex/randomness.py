"""Tests for randomness: the ordinal permutation test, two runs-test
variants, and the tail-probability / two-sample-t machinery they need.

The permutation test partitions the series into non-overlapping groups of
t consecutive samples (remainder discarded), maps each group to its
ordinal pattern, and chi-square-tests the t! pattern counts against the
uniform expectation G/t!.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import erfc, factorial, sqrt
from typing import Literal, Sequence

import numpy as np
from scipy import special

from .core import DataError, NumericalError, Series
from .entropy import ordinal_pattern_codes

__all__ = [
    "PermutationTestResult",
    "RunsTestResult",
    "TTestResult",
    "permutation_test",
    "runs_test",
    "chi_square_sf",
    "normal_sf",
    "welch_t_test",
]

RunsVariant = Literal["above_below_median", "up_down"]

# classical validity rule: warn when the expected count per category is small
_LOW_EXPECTED = 5.0


def chi_square_sf(x: float, df: int) -> float:
    """Upper-tail probability of the chi-square distribution.

    Regularized upper incomplete gamma Q(df/2, x/2), evaluated by scipy's
    series / continued-fraction implementation.
    """
    if x < 0:
        raise ValueError(f"chi-square statistic must be >= 0, got {x}")
    if df < 1:
        raise ValueError(f"degrees of freedom must be >= 1, got {df}")
    return float(special.gammaincc(df / 2.0, x / 2.0))


def normal_sf(z: float) -> float:
    """Standard normal upper tail 1 - Phi(z), via the complementary error
    function."""
    return 0.5 * erfc(z / sqrt(2.0))


@dataclass(frozen=True)
class PermutationTestResult:
    chi_square: float
    df: int
    p_value: float
    group_count: int
    low_expected_warning: bool
    counts: tuple[int, ...] = ()  # observed pattern histogram, length t!


def permutation_test(series: Series, t: int = 5) -> PermutationTestResult:
    """Chi-square test of ordinal-pattern uniformity over disjoint groups.

    Groups start at index 0 and do not overlap; trailing samples that do
    not fill a group are discarded. The statistic is computed as
    sum(O^2) * t! / G - G, which is algebraically Pearson's statistic with
    E = G/t! and integer-exact until the final division.
    """
    t = int(t)
    if t < 2:
        raise ValueError(f"group size must be >= 2, got {t}")
    if t > 8:
        raise ValueError(f"group size capped at 8 (t! categories), got {t}")
    n = len(series)
    g = n // t
    if g == 0:
        raise DataError(f"no complete group (N={n} < t={t})")
    groups = series.values[: g * t].reshape(g, t)
    codes = ordinal_pattern_codes(groups)
    cats = factorial(t)
    counts = np.bincount(codes, minlength=cats).astype(np.int64)
    sum_sq = int((counts * counts).sum())
    chi_square = sum_sq * cats / g - g
    df = cats - 1
    expected = g / cats
    return PermutationTestResult(
        chi_square=float(chi_square),
        df=df,
        p_value=chi_square_sf(chi_square, df),
        group_count=g,
        low_expected_warning=expected < _LOW_EXPECTED,
        counts=tuple(int(c) for c in counts),
    )


@dataclass(frozen=True)
class RunsTestResult:
    z: float
    p_value: float
    runs: int
    n_effective: int
    variant: RunsVariant


def _count_runs(signs: np.ndarray) -> int:
    return 1 + int(np.count_nonzero(signs[1:] != signs[:-1]))


def runs_test(series: Series, variant: RunsVariant = "above_below_median") -> RunsTestResult:
    """Two-sided z-test on the number of maximal constant-sign runs.

    above_below_median: signs are (x > median); samples equal to the
    median are dropped. Moments: mu = 2*n1*n2/n + 1,
    var = 2*n1*n2*(2*n1*n2 - n) / (n^2 * (n-1)).

    up_down: signs are sign(x[i+1] - x[i]) with zero differences dropped.
    Moments over the n_d retained differences: mu = (2*n_d + 1)/3,
    var = (16*n_d - 29)/90.

    Fewer runs than expected gives negative z, more gives positive.
    """
    x = series.values
    if variant == "above_below_median":
        med = float(np.median(x))
        kept = x[x != med]
        if kept.size == 0:
            raise NumericalError("degenerate series (all values equal the median)")
        signs = kept > med
        n1 = int(np.count_nonzero(signs))
        n2 = int(signs.size - n1)
        n = n1 + n2
        runs = _count_runs(signs)
        two_n1n2 = 2.0 * n1 * n2
        mu = two_n1n2 / n + 1.0
        var = two_n1n2 * (two_n1n2 - n) / (n * n * (n - 1.0)) if n > 1 else 0.0
        n_eff = n
    elif variant == "up_down":
        diffs = np.diff(x)
        diffs = diffs[diffs != 0]
        if diffs.size == 0:
            raise NumericalError("degenerate series (no nonzero differences)")
        signs = diffs > 0
        n_d = int(signs.size)
        runs = _count_runs(signs)
        mu = (2.0 * n_d + 1.0) / 3.0
        var = (16.0 * n_d - 29.0) / 90.0
        n_eff = n_d
    else:
        raise ValueError(f"unknown runs-test variant: {variant!r}")
    if var <= 0:
        raise NumericalError(f"sample too small for the runs test (n={n_eff})")
    z = (runs - mu) / sqrt(var)
    return RunsTestResult(
        z=float(z),
        p_value=2.0 * normal_sf(abs(z)),
        runs=runs,
        n_effective=n_eff,
        variant=variant,
    )


@dataclass(frozen=True)
class TTestResult:
    t_statistic: float
    df: float
    p_value: float
    mean_a: float
    mean_b: float


def welch_t_test(a: Sequence[float], b: Sequence[float]) -> TTestResult:
    """Two-sample Welch t-test (unequal variances), two-sided p-value.

    The tail probability comes from the regularized incomplete beta
    function: P(|T| > t) = I_{df/(df+t^2)}(df/2, 1/2).
    """
    xa = np.asarray(a, dtype=np.float64)
    xb = np.asarray(b, dtype=np.float64)
    if xa.size < 2 or xb.size < 2:
        raise DataError("each group needs at least 2 observations")
    va = float(np.var(xa, ddof=1))
    vb = float(np.var(xb, ddof=1))
    if va == 0.0 and vb == 0.0:
        raise NumericalError("degenerate variance in both groups")
    sa = va / xa.size
    sb = vb / xb.size
    se = sqrt(sa + sb)
    mean_a = float(np.mean(xa))
    mean_b = float(np.mean(xb))
    t_stat = (mean_a - mean_b) / se
    df = (sa + sb) ** 2 / (
        sa * sa / (xa.size - 1) + sb * sb / (xb.size - 1)
    )
    if t_stat == 0.0:
        p = 1.0
    else:
        p = float(special.betainc(df / 2.0, 0.5, df / (df + t_stat * t_stat)))
    return TTestResult(t_statistic=float(t_stat), df=float(df), p_value=p,
                       mean_a=mean_a, mean_b=mean_b)
