"""Experiment recipes that regenerate the reference result tables.

Each ``reproduce_*`` function rebuilds one table from its recipe, compares
every checkable cell against the embedded reference values, and evaluates
the table's qualitative properties (orderings, monotonicity, p-value
fractions). Deterministic cells are compared at fixed tolerances;
stochastic cells are validated as bands over seeded replications or
reported as information only.

Multi-scale tables are swept with ``partial="mean"`` coarse-graining
because the source pipeline kept the trailing remainder as a short block.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path
from statistics import median
from typing import Sequence

import numpy as np

from . import reference as ref
from .core import (
    DataError,
    MetricResult,
    NumericalError,
    Series,
    coarse_grain,
    rescale_for_plot,
)
from .entropy import PermEnParams, SampEnParams, permutation_entropy, sample_entropy
from .generators import add_noise, arma_simulate, derive_seed, generate_iid, logistic_map
from .metrics import AnalysisConfig, build_metrics
from .randomness import (
    TTestResult,
    chi_square_sf,
    normal_sf,
    permutation_test,
    runs_test,
    welch_t_test,
)
from .report import ExperimentReport
from .seriesio import SeriesFile, read_series

__all__ = [
    "CellComparison",
    "PropertyCheck",
    "ReproduceResult",
    "reproduce",
    "logistic_recipe",
    "compare_groups",
    "chf_nsr_comparison",
    "find_santafe_file",
    "rescaled_scores_transform",
    "DEFAULT_SEED",
]

DEFAULT_SEED = 42
SCALES = ref.SCALES


@dataclass(frozen=True)
class CellComparison:
    label: str
    scale: int
    metric: str
    observed: float
    reference: float
    tol: float
    kind: str            # exact | band | info
    passed: bool | None  # None for info cells
    note: str = ""

    def line(self) -> str:
        status = {True: "ok", False: "FAIL", None: "info"}[self.passed]
        out = (f"{self.label} | scale {self.scale} | {self.metric}: "
               f"got {self.observed:.6g}, reference {self.reference:.6g}")
        if self.kind == "exact":
            out += f" (tol {self.tol:g})"
        elif self.kind == "band":
            out += f" (band +/- {self.tol:g})"
        out += f" [{status}]"
        if self.note:
            out += f"  # {self.note}"
        return out


@dataclass(frozen=True)
class PropertyCheck:
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"{self.name}: {'ok' if self.passed else 'FAIL'}  ({self.detail})"


@dataclass
class ReproduceResult:
    experiment: str
    status: str  # ok | skipped
    report: ExperimentReport
    comparisons: list[CellComparison] = field(default_factory=list)
    checks: list[PropertyCheck] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def all_passed(self) -> bool:
        cells = all(c.passed is not False for c in self.comparisons)
        return cells and all(c.passed for c in self.checks)

    def summary_lines(self) -> list[str]:
        lines = [f"experiment {self.experiment}: {self.status}"]
        lines += [c.line() for c in self.comparisons]
        lines += [c.line() for c in self.checks]
        lines += [f"note: {n}" for n in self.notes]
        if self.status == "ok":
            lines.append(f"result: {'PASS' if self.all_passed else 'FAIL'}")
        return lines


def logistic_recipe(r: float, label: str | None = None) -> Series:
    """The battery's logistic series: x0=0.3, 5000 generated, last 1000 kept."""
    return logistic_map(r, x0=0.3, keep=1000, total=5000,
                        label=label or f"logistic r={r:g}")


def _evaluate(series: Series, config: AnalysisConfig) -> list[MetricResult]:
    out = []
    for metric in build_metrics(config):
        try:
            out.append(metric(series))
        except (DataError, NumericalError) as exc:
            out.append(MetricResult(metric=metric.name, value=float("nan"),
                                    warnings=(f"error: {exc}",)))
    return out


def _compare(report: ExperimentReport, cells: Sequence[ref.RefCell]) -> list[CellComparison]:
    out = []
    for cell in cells:
        try:
            row = report.get(cell.label, cell.scale, cell.metric)
        except KeyError:
            continue
        observed = row.value
        if cell.kind == "info":
            passed = None
        elif not math.isfinite(observed):
            passed = False
        else:
            passed = abs(observed - cell.value) <= cell.tol
        out.append(CellComparison(
            label=cell.label, scale=cell.scale, metric=cell.metric,
            observed=observed, reference=cell.value, tol=cell.tol,
            kind=cell.kind, passed=passed, note=cell.note,
        ))
    return out


def _mean_result(results: list[MetricResult], name: str) -> MetricResult:
    """Aggregate one metric over replications: mean score, p-value of the
    mean statistic for test metrics (the convention the source tables use)."""
    values = [r.value for r in results if math.isfinite(r.value)]
    if not values:
        return MetricResult(metric=name, value=float("nan"),
                            warnings=("error: no successful replication",))
    mean = float(np.mean(values))
    warn = ()
    failed = len(results) - len(values)
    if failed:
        warn = (f"{failed} replication(s) failed",)
    if name == "permtest":
        df = next(r.df for r in results if r.df is not None)
        return MetricResult(metric=name, value=mean, statistic=mean, df=df,
                            p_value=chi_square_sf(mean, int(df)), warnings=warn)
    if name == "runstest":
        return MetricResult(metric=name, value=mean, statistic=mean,
                            p_value=2.0 * normal_sf(abs(mean)), warnings=warn)
    return MetricResult(metric=name, value=mean, warnings=warn)


# ---------------------------------------------------------------------------
# table2: logistic-map scores at scale 1
# ---------------------------------------------------------------------------

def reproduce_table2(seed: int = DEFAULT_SEED, replications: int = 30,
                     config: AnalysisConfig | None = None) -> ReproduceResult:
    config = config or AnalysisConfig()
    report = ExperimentReport()
    for r in (3.5, 3.7, 3.9):
        series = logistic_recipe(r)
        for res in _evaluate(series, config):
            report.add_result(series.label, 1, res)
    base = logistic_recipe(3.5, label=ref.L35N)
    noisy0 = add_noise(base, derive_seed(seed, 3, 0), sd_absolute=0.1)
    for res in _evaluate(noisy0, config):
        report.add_result(ref.L35N, 1, res)

    comparisons = _compare(report, [c for c in ref.TABLE2 if c.kind != "band"])
    # stochastic noisy cells: band on the mean over fresh seeded replications
    sampen_vals, permen_vals = [], []
    params_se = SampEnParams(m=config.m, r_factor=config.r_factor)
    params_pe = PermEnParams(n=config.n)
    for rep in range(replications):
        noisy = add_noise(base, derive_seed(seed, 3, rep), sd_absolute=0.1)
        sampen_vals.append(sample_entropy(noisy, params_se).value)
        permen_vals.append(permutation_entropy(noisy, params_pe))
    for cell in ref.TABLE2:
        if cell.kind != "band":
            continue
        observed = float(np.mean(sampen_vals if cell.metric == "sampen" else permen_vals))
        comparisons.append(CellComparison(
            label=cell.label, scale=1, metric=cell.metric, observed=observed,
            reference=cell.value, tol=cell.tol, kind="band",
            passed=abs(observed - cell.value) <= cell.tol,
            note=f"mean of {replications} noise seeds",
        ))
    result = ReproduceResult("table2", "ok", report, comparisons)
    result.notes.append("clean logistic cells are deterministic; the noisy column "
                        "uses seeded noise replications")
    return result


# ---------------------------------------------------------------------------
# table3_logistic: multi-scale sweep of r=3.7 and the noisy r=3.5 series
# ---------------------------------------------------------------------------

def _sweep_rows(report: ExperimentReport, series: Series, config: AnalysisConfig) -> None:
    for scale in config.scales:
        grained = coarse_grain(series, scale, partial="mean")
        for res in _evaluate(grained, config):
            report.add_result(series.label, scale, res)


def reproduce_table3(seed: int = DEFAULT_SEED, replications: int = 30,
                     config: AnalysisConfig | None = None) -> ReproduceResult:
    config = config or AnalysisConfig()
    report = ExperimentReport()
    _sweep_rows(report, logistic_recipe(3.7), config)
    noisy = add_noise(logistic_recipe(3.5, label=ref.L35N), derive_seed(seed, 3, 0),
                      sd_absolute=0.1)
    _sweep_rows(report, noisy, config)
    comparisons = _compare(report, ref.TABLE3_LOGISTIC)
    result = ReproduceResult("table3_logistic", "ok", report, comparisons)
    result.notes.append("runs-test cells beyond scale 1 are informational: the source "
                        "pipeline decimated instead of averaging for that test")
    return result


# ---------------------------------------------------------------------------
# table1: iid uniform/normal/exponential battery
# ---------------------------------------------------------------------------

_TABLE1_DISTS = ("uniform", "normal", "exponential")


def reproduce_table1(seed: int = DEFAULT_SEED, replications: int = 30,
                     config: AnalysisConfig | None = None) -> ReproduceResult:
    config = config or AnalysisConfig()
    report = ExperimentReport()
    checks: list[PropertyCheck] = []
    p_cells_ok = 0
    p_cells = 0
    monotone_reps = 0
    for di, dist in enumerate(_TABLE1_DISTS):
        per_metric: dict[str, list[MetricResult]] = {m: [] for m in config.metrics}
        for rep in range(replications):
            series = generate_iid(dist, 1000, derive_seed(seed, di, rep))
            for res in _evaluate(series, config):
                per_metric[res.metric].append(res)
            if dist == "uniform":
                pes = [permutation_entropy(coarse_grain(series, s),
                                           PermEnParams(n=config.n))
                       for s in config.scales]
                monotone_reps += all(pes[i + 1] <= pes[i] for i in range(len(pes) - 1))
        # scale-1 cells: replication means
        for name in config.metrics:
            report.add_result(dist, 1, _mean_result(per_metric[name], name))
        # deeper scales: single seeded draw, as in the source table
        first = generate_iid(dist, 1000, derive_seed(seed, di, 0))
        for scale in config.scales:
            if scale == 1:
                continue
            grained = coarse_grain(first, scale, partial="mean")
            for res in _evaluate(grained, config):
                report.add_result(dist, scale, res)
        for scale in config.scales:
            for name in ("permtest", "runstest"):
                if name not in config.metrics:
                    continue
                p = report.get(dist, scale, name).p_value
                p_cells += 1
                p_cells_ok += (p is not None and p > 0.05)

    comparisons = _compare(report, ref.TABLE1_MEANS)
    for (label, metric), (lo, hi) in ref.TABLE1_BANDS.items():
        value = report.get(label, 1, metric).value
        checks.append(PropertyCheck(
            name=f"{label} {metric} replication mean in [{lo}, {hi}]",
            passed=lo <= value <= hi,
            detail=f"mean {value:.4f} over {replications} replications",
        ))
    checks.append(PropertyCheck(
        name="permtest/runstest p-values > 0.05 in >= 80% of cells",
        passed=p_cells_ok >= 0.8 * p_cells,
        detail=f"{p_cells_ok}/{p_cells} cells",
    ))
    checks.append(PropertyCheck(
        name="uniform permen non-increasing across scales in >= 27/30 replications",
        passed=monotone_reps >= math.ceil(0.9 * replications),
        detail=f"{monotone_reps}/{replications} replications fully non-increasing",
    ))
    result = ReproduceResult("table1", "ok", report, comparisons, checks)
    result.notes.append("cells are statistical: scale-1 rows are replication means, "
                        "deeper scales single seeded draws")
    return result


# ---------------------------------------------------------------------------
# santafe: laser set A scores and multi-scale sweep (needs the data file)
# ---------------------------------------------------------------------------

_SANTAFE_NAMES = ("santafe_a.txt", "santafe.txt", "laser.txt", "laser.dat",
                  "A.dat", "a.dat", "A.txt")


def find_santafe_file(data_dir: str | Path | None) -> Path | None:
    if data_dir is None:
        return None
    base = Path(data_dir)
    if base.is_file():
        return base
    for name in _SANTAFE_NAMES:
        candidate = base / name
        if candidate.is_file():
            return candidate
    return None


def reproduce_santafe(seed: int = DEFAULT_SEED, replications: int = 30,
                      config: AnalysisConfig | None = None,
                      data_dir: str | Path | None = None) -> ReproduceResult:
    config = config or AnalysisConfig()
    path = find_santafe_file(data_dir)
    if path is None:
        result = ReproduceResult("santafe", "skipped", ExperimentReport())
        result.notes.append(
            "laser data file not found; pass --data-dir with one of "
            + ", ".join(_SANTAFE_NAMES))
        return result
    clean = read_series(SeriesFile(path)).with_label(ref.SF_CLEAN)
    report = ExperimentReport()
    variants = [clean]
    for vi, mult in enumerate((0.1, 0.2, 1.0)):
        variants.append(add_noise(clean, derive_seed(seed, 5, vi), sd_multiplier=mult,
                                  label=ref.SF_NOISE[mult]))
    for series in variants:
        for res in _evaluate(series, config):
            report.add_result(series.label, 1, res)
    # multi-scale rows for the clean series (scale-1 rows already present)
    for scale in config.scales:
        if scale == 1:
            continue
        grained = coarse_grain(clean, scale, partial="mean")
        for res in _evaluate(grained, config):
            report.add_result(ref.SF_CLEAN, scale, res)
    comparisons = _compare(report, ref.SANTAFE_SCORES)
    comparisons += [c for c in _compare(report, ref.SANTAFE_MSE) if c.scale != 1]

    # noise ordering with fresh derived seeds
    order_ok = {"sampen": 0, "permen": 0, "permtest": 0, "runstest": 0}
    reps = max(1, replications // 3)
    params_se = SampEnParams(m=config.m, r_factor=config.r_factor)
    params_pe = PermEnParams(n=config.n)
    for rep in range(reps):
        se_seq, pe_seq, chi_seq, az_seq = [], [], [], []
        for vi, mult in enumerate((0.0, 0.1, 0.2, 1.0)):
            if mult == 0.0:
                series = clean
            else:
                series = add_noise(clean, derive_seed(seed, 6, rep, vi), sd_multiplier=mult)
            se_seq.append(sample_entropy(series, params_se).value)
            pe_seq.append(permutation_entropy(series, params_pe))
            chi_seq.append(permutation_test(series, config.t).chi_square)
            az_seq.append(abs(runs_test(series, config.runs_variant).z))
        order_ok["sampen"] += all(np.diff(se_seq) > 0)
        order_ok["permen"] += all(np.diff(pe_seq) > 0)
        order_ok["permtest"] += all(np.diff(chi_seq) < 0)
        order_ok["runstest"] += all(np.diff(az_seq) < 0)
    checks = [
        PropertyCheck(
            name="sampen and permen increase with noise level 0 -> 0.1 -> 0.2 -> 1",
            passed=order_ok["sampen"] == reps and order_ok["permen"] == reps,
            detail=f"sampen {order_ok['sampen']}/{reps}, permen {order_ok['permen']}/{reps}",
        ),
        PropertyCheck(
            name="permtest chi-square and runs |z| decrease with noise level",
            passed=order_ok["permtest"] == reps and order_ok["runstest"] == reps,
            detail=f"permtest {order_ok['permtest']}/{reps}, runs {order_ok['runstest']}/{reps}",
        ),
    ]
    return ReproduceResult("santafe", "ok", report, comparisons, checks)


# ---------------------------------------------------------------------------
# arma_table4 / arma_table5
# ---------------------------------------------------------------------------

def _arma_series(name: str, ar, ma, seed, pi: int, rep: int) -> Series:
    return arma_simulate(ar, ma, 1000, derive_seed(seed, pi, rep), label=name)


def reproduce_arma4(seed: int = DEFAULT_SEED, replications: int = 10,
                    config: AnalysisConfig | None = None) -> ReproduceResult:
    config = config or AnalysisConfig()
    report = ExperimentReport()
    per_proc: dict[str, dict[str, list[MetricResult]]] = {}
    for pi, (name, ar, ma) in enumerate(ref.ARMA_PROCESSES):
        per_metric: dict[str, list[MetricResult]] = {m: [] for m in config.metrics}
        for rep in range(replications):
            series = _arma_series(name, ar, ma, seed, pi, rep)
            for res in _evaluate(series, config):
                per_metric[res.metric].append(res)
        per_proc[name] = per_metric
        for metric_name in config.metrics:
            report.add_result(name, 1, _mean_result(per_metric[metric_name], metric_name))

    # orderings per replication: entropy falls, test statistics rise,
    # from ARMA(2,2) to ARMA(1,1) to AR(1)
    counts = {"sampen": 0, "permen": 0, "permtest": 0, "runstest": 0}
    names = [p[0] for p in ref.ARMA_PROCESSES]
    for rep in range(replications):
        se = [per_proc[n]["sampen"][rep].value for n in names]
        pe = [per_proc[n]["permen"][rep].value for n in names]
        chi = [per_proc[n]["permtest"][rep].value for n in names]
        az = [abs(per_proc[n]["runstest"][rep].value) for n in names]
        counts["sampen"] += se[0] > se[1] > se[2]
        counts["permen"] += pe[0] > pe[1] > pe[2]
        counts["permtest"] += chi[0] < chi[1] < chi[2]
        counts["runstest"] += az[0] < az[1] < az[2]
    need = math.ceil(0.9 * replications)
    ar1_p = median(per_proc[ref.AR1]["permtest"][rep].p_value for rep in range(replications))
    a22_p = median(per_proc[ref.ARMA22]["runstest"][rep].p_value for rep in range(replications))
    checks = [
        PropertyCheck(
            name=f"sampen and permen strictly decrease across {' > '.join(names)} "
                 f"in >= {need}/{replications} replications",
            passed=counts["sampen"] >= need and counts["permen"] >= need,
            detail=f"sampen {counts['sampen']}, permen {counts['permen']}",
        ),
        PropertyCheck(
            name=f"permtest chi-square and runs |z| strictly increase in >= "
                 f"{need}/{replications} replications",
            passed=counts["permtest"] >= need and counts["runstest"] >= need,
            detail=f"permtest {counts['permtest']}, runs {counts['runstest']}",
        ),
        PropertyCheck(
            name="AR(1) permtest p median < 0.001",
            passed=ar1_p < 1e-3,
            detail=f"median p {ar1_p:.2e}",
        ),
        PropertyCheck(
            name="ARMA(2,2) runs-test p median < 0.01",
            passed=a22_p < 1e-2,
            detail=f"median p {a22_p:.2e}",
        ),
    ]
    comparisons = _compare(report, ref.ARMA_TABLE4)
    result = ReproduceResult("arma_table4", "ok", report, comparisons, checks)
    result.notes.append("reference cells are unseeded draws; reported values are "
                        f"means over {replications} seeded replications")
    return result


def reproduce_arma5(seed: int = DEFAULT_SEED, replications: int = 10,
                    config: AnalysisConfig | None = None) -> ReproduceResult:
    config = config or AnalysisConfig()
    report = ExperimentReport()
    for pi, (name, ar, ma) in enumerate(ref.ARMA_PROCESSES):
        _sweep_rows(report, _arma_series(name, ar, ma, seed, pi, 0), config)
    # run-count decay for AR(1): median |z| per scale over replications
    ar1_abs_z = np.zeros((replications, len(config.scales)))
    for rep in range(replications):
        series = _arma_series(ref.AR1, (0.9,), (), seed, 2, rep)
        for si, scale in enumerate(config.scales):
            grained = coarse_grain(series, scale, partial="mean")
            ar1_abs_z[rep, si] = abs(runs_test(grained, config.runs_variant).z)
    med = np.median(ar1_abs_z, axis=0)
    checks = [
        PropertyCheck(
            name="AR(1) runs |z| median decays monotonically across scales",
            passed=bool(np.all(np.diff(med) < 0)),
            detail="median |z| by scale: " + ", ".join(f"{v:.2f}" for v in med),
        ),
        PropertyCheck(
            name="AR(1) runs |z| starts near 21.9 and ends small",
            passed=bool(14.0 <= med[0] <= 30.0 and med[-1] <= 6.0),
            detail=f"scale 1 median {med[0]:.2f}, scale {config.scales[-1]} "
                   f"median {med[-1]:.2f}",
        ),
    ]
    comparisons = _compare(report, ref.ARMA_TABLE5)
    return ReproduceResult("arma_table5", "ok", report, comparisons, checks)


_EXPERIMENTS = {
    "table1": reproduce_table1,
    "table2": reproduce_table2,
    "table3_logistic": reproduce_table3,
    "santafe": reproduce_santafe,
    "arma_table4": reproduce_arma4,
    "arma_table5": reproduce_arma5,
}


def reproduce(experiment: str, *, data_dir: str | Path | None = None,
              seed: int = DEFAULT_SEED, replications: int | None = None,
              config: AnalysisConfig | None = None) -> ReproduceResult:
    """Regenerate one named reference table and compare it cell by cell."""
    if experiment not in _EXPERIMENTS:
        raise DataError(f"unknown experiment {experiment!r}; choose from "
                        + ", ".join(ref.EXPERIMENTS))
    kwargs = {"seed": seed, "config": config}
    if replications is not None:
        kwargs["replications"] = replications
    elif experiment.startswith("arma"):
        kwargs["replications"] = 10
    else:
        kwargs["replications"] = 30
    if experiment == "santafe":
        kwargs["data_dir"] = data_dir
    return _EXPERIMENTS[experiment](**kwargs)


# ---------------------------------------------------------------------------
# group comparison (CHF vs NSR style)
# ---------------------------------------------------------------------------

def compare_groups(
    group_a: Sequence[SeriesFile | str | Path | Series],
    group_b: Sequence[SeriesFile | str | Path | Series],
    config: AnalysisConfig | None = None,
    group_names: tuple[str, str] = ("A", "B"),
) -> tuple[ExperimentReport, dict[str, TTestResult]]:
    """Score every series in both groups and Welch-t-test each metric
    between them.

    Returns the per-series report (rows labeled ``group:series``, ready for
    a box_by_group plot) and the per-metric t-test results.
    """
    config = config or AnalysisConfig()
    if len(group_a) < 2 or len(group_b) < 2:
        raise DataError("each group needs at least 2 series")

    def load(item) -> Series:
        if isinstance(item, Series):
            return item
        return read_series(item if isinstance(item, SeriesFile) else SeriesFile(item))

    report = ExperimentReport()
    values: dict[tuple[str, str], list[float]] = {}
    for gname, group in zip(group_names, (group_a, group_b)):
        for item in group:
            series = load(item)
            for res in _evaluate(series, config):
                report.add_result(f"{gname}:{series.label}", 1, res)
                if math.isfinite(res.value):
                    values.setdefault((gname, res.metric), []).append(res.value)
    tests: dict[str, TTestResult] = {}
    for metric in config.metrics:
        a = values.get((group_names[0], metric), [])
        b = values.get((group_names[1], metric), [])
        if len(a) >= 2 and len(b) >= 2:
            tests[metric] = welch_t_test(a, b)
    return report, tests


def chf_nsr_comparison(data_dir: str | Path,
                       config: AnalysisConfig | None = None):
    """CHF-vs-NSR group comparison over ``data_dir/chf/*`` and
    ``data_dir/nsr/*`` series files. Returns None when the data is absent."""
    base = Path(data_dir)
    chf = sorted((base / "chf").glob("*.txt")) + sorted((base / "chf").glob("*.dat"))
    nsr = sorted((base / "nsr").glob("*.txt")) + sorted((base / "nsr").glob("*.dat"))
    if len(chf) < 2 or len(nsr) < 2:
        return None
    return compare_groups(chf, nsr, config, group_names=("CHF", "NSR"))


# ---------------------------------------------------------------------------
# figure-style rescaling
# ---------------------------------------------------------------------------

def rescaled_scores_transform(report: ExperimentReport, name: str = "rescaled") -> None:
    """Attach the comparison-figure transform column: chi-square scores are
    first mapped through 1/ln, runs scores through 1/|z|, then every metric
    is min-max rescaled to [0,1] across the report's rows for that metric."""
    per_metric: dict[str, list[int]] = {}
    for i, row in enumerate(report.rows):
        per_metric.setdefault(row.metric, []).append(i)
    out = [float("nan")] * len(report.rows)
    for metric, idxs in per_metric.items():
        raw = [report.rows[i].value for i in idxs]
        if metric == "permtest":
            raw = rescale_for_plot(raw, "inv_ln")
        elif metric == "runstest":
            raw = rescale_for_plot(raw, "inv_abs")
        scaled = rescale_for_plot(raw, "minmax") if len(set(raw)) > 1 else [0.5] * len(raw)
        for i, v in zip(idxs, scaled):
            out[i] = v
    report.set_transform(name, out)
