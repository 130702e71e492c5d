"""Core value types shared by every other module: the series container,
summary statistics, coarse-graining, and the score-rescaling transforms
used for comparison plots.

Everything here is a pure function over immutable values; instances are
safe to share between threads.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Literal, Sequence

import numpy as np


class DataError(ValueError):
    """Raised for malformed or unusable input data (files, series, configs)."""


class NumericalError(ValueError):
    """Raised when a computation degenerates (no matches, zero variance, ...)."""


@dataclass(frozen=True)
class Series:
    """An ordered sequence of finite real-valued samples.

    ``values`` is coerced to a read-only 1-d float64 array. Construction
    rejects empty input and non-finite samples.
    """

    values: np.ndarray
    label: str | None = None

    def __post_init__(self):
        arr = np.asarray(self.values, dtype=np.float64)
        if arr.ndim != 1:
            raise DataError(f"series values must be 1-d, got shape {arr.shape}")
        if arr.size == 0:
            raise DataError("empty input")
        if not np.all(np.isfinite(arr)):
            bad = int(np.flatnonzero(~np.isfinite(arr))[0])
            raise DataError(f"non-finite sample at index {bad}")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)

    def __len__(self) -> int:
        return int(self.values.size)

    def with_label(self, label: str) -> "Series":
        return Series(self.values, label)


@dataclass(frozen=True)
class SummaryStats:
    """Mean, standard deviation, extrema and count of a series.

    ``sd_divisor`` records whether ``sd`` used the sample (``n-1``) or
    population (``n``) divisor, so downstream tolerances can pin it.
    """

    mean: float
    sd: float
    minimum: float
    maximum: float
    n: int
    sd_divisor: Literal["n-1", "n"] = "n-1"


def summary(series: Series, *, population: bool = False) -> SummaryStats:
    """Summary statistics of a series. Sample SD (divisor n-1) by default."""
    x = series.values
    if x.size == 0:
        raise DataError("empty input")
    ddof = 0 if population else 1
    sd = float(np.std(x, ddof=ddof)) if x.size > ddof else 0.0
    return SummaryStats(
        mean=float(np.mean(x)),
        sd=sd,
        minimum=float(np.min(x)),
        maximum=float(np.max(x)),
        n=int(x.size),
        sd_divisor="n" if population else "n-1",
    )


def coarse_grain(series: Series, scale: int, *, partial: Literal["drop", "mean"] = "drop") -> Series:
    """Down-sample by replacing each disjoint block of ``scale`` consecutive
    samples with its arithmetic mean.

    ``partial="drop"`` (default) discards the trailing remainder, giving
    exactly ``floor(N/scale)`` output samples. ``partial="mean"`` keeps the
    remainder as one short final block; the reproduction harness uses this
    mode because the reference result tables were produced that way.
    """
    n = len(series)
    scale = int(scale)
    if scale < 1 or scale > n:
        raise DataError(f"invalid scale {scale} for series of length {n}")
    if scale == 1:
        return series
    nblocks = n // scale
    x = series.values
    out = x[: nblocks * scale].reshape(nblocks, scale).mean(axis=1)
    rem = n - nblocks * scale
    if rem and partial == "mean":
        out = np.append(out, x[nblocks * scale:].mean())
    return Series(out, series.label)


RescaleKind = Literal["minmax", "inv_ln", "inv_abs"]


def rescale_for_plot(scores: Sequence[float], kind: RescaleKind) -> list[float]:
    """Transform raw scores for side-by-side comparison plots.

    minmax  -- (s - min) / (max - min), onto [0, 1]
    inv_ln  -- 1 / ln(s), requires every score > 1
    inv_abs -- 1 / |s|, requires every score != 0
    """
    vals = [float(s) for s in scores]
    if kind == "minmax":
        if len(set(vals)) < 2:
            raise DataError("minmax rescale needs at least two distinct scores")
        lo, hi = min(vals), max(vals)
        return [(v - lo) / (hi - lo) for v in vals]
    if kind == "inv_ln":
        for v in vals:
            if v <= 1.0:
                raise DataError(f"inv_ln rescale requires scores > 1, got {v}")
        return [1.0 / np.log(v) for v in vals]
    if kind == "inv_abs":
        for v in vals:
            if v == 0.0:
                raise DataError("inv_abs rescale requires nonzero scores, got 0")
        return [1.0 / abs(v) for v in vals]
    raise ValueError(f"unknown rescale kind: {kind!r}")


@dataclass(frozen=True)
class MetricResult:
    """A named score with optional test statistic, df and p-value."""

    metric: str
    value: float
    statistic: float | None = None
    df: float | None = None
    p_value: float | None = None
    warnings: tuple[str, ...] = ()

    @property
    def failed(self) -> bool:
        return bool(np.isnan(self.value))


@dataclass(frozen=True)
class Metric:
    """A named evaluation of a series, used by sweeps and the CLI."""

    name: str
    evaluate: Callable[[Series], MetricResult] = field(repr=False)

    def __call__(self, series: Series) -> MetricResult:
        return self.evaluate(series)
