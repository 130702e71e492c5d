"""Command-line front end.

Subcommands: analyze, mse, generate, reproduce, compare-groups, plot.
Exit codes: 0 success (including skipped optional data), 1 usage error,
2 data error, 3 internal numerical error.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .core import DataError, MetricResult, NumericalError, Series
from .entropy import mse_sweep
from .experiments import (
    DEFAULT_SEED,
    compare_groups,
    reproduce,
    rescaled_scores_transform,
)
from .generators import GeneratorSpec, build_series
from .metrics import METRIC_NAMES, AnalysisConfig, build_metrics
from .reference import EXPERIMENTS
from .report import ExperimentReport, render_report, write_report, read_report_json
from .plots import write_plot
from .seriesio import SeriesFile, read_series, write_series

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_NUMERIC = 3


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors; this tool reserves 2 for data errors
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_metric_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--metric", action="append", choices=METRIC_NAMES, dest="metrics",
                   help="metric to compute (repeatable; default: all four)")
    p.add_argument("--m", type=int, default=2, help="sample-entropy embedding length")
    p.add_argument("--r-factor", type=float, default=0.2,
                   help="sample-entropy tolerance as a multiple of the series SD")
    p.add_argument("--absolute-r", action="store_true",
                   help="treat --r-factor as an absolute tolerance")
    p.add_argument("--n", type=int, default=5, help="permutation-entropy tuple size")
    p.add_argument("--t", type=int, default=5, help="permutation-test group size")
    p.add_argument("--runs-variant", choices=("above_below_median", "up_down"),
                   default="above_below_median")
    p.add_argument("--scales", default="1,2,3,4,5,10",
                   help="comma-separated scale factors for sweeps")
    p.add_argument("--seed", type=int, default=None, help="base seed for generated inputs")


def _add_io_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", help="output path (default: stdout)")


def _config_from(args) -> AnalysisConfig:
    return AnalysisConfig(
        metrics=tuple(args.metrics) if args.metrics else METRIC_NAMES,
        m=args.m,
        r_factor=args.r_factor,
        r_mode="absolute" if args.absolute_r else "per_input_sd",
        n=args.n,
        t=args.t,
        runs_variant=args.runs_variant,
        scales=tuple(int(s) for s in str(args.scales).split(",") if s.strip()),
        seed=args.seed,
    )


def _load_spec(text: str) -> GeneratorSpec:
    stripped = text.strip()
    if not stripped.startswith("{"):
        path = Path(stripped)
        if not path.is_file():
            raise DataError(f"spec is neither inline JSON nor an existing file: {text}")
        stripped = path.read_text(encoding="utf-8")
    return GeneratorSpec.from_json(stripped)


def _gather_inputs(args) -> list[Series | SeriesFile]:
    inputs: list[Series | SeriesFile] = []
    for path in args.inputs or ():
        inputs.append(SeriesFile(path))
    for spec_text in args.specs or ():
        inputs.append(build_series(_load_spec(spec_text)))
    if not inputs:
        raise DataError("no inputs: pass series files and/or --spec")
    return inputs


def _emit(report: ExperimentReport, args) -> None:
    if args.out:
        write_report(report, args.format, args.out)
    else:
        sys.stdout.write(render_report(report, args.format))


def _cmd_analyze(args) -> int:
    config = _config_from(args)
    metrics = build_metrics(config)
    report = ExperimentReport()
    attempted = 0
    succeeded = 0
    for item in _gather_inputs(args):
        attempted += 1
        try:
            series = item if isinstance(item, Series) else read_series(item)
        except DataError as exc:
            for metric in metrics:
                label = Path(item.path).stem if isinstance(item, SeriesFile) else "input"
                report.add_result(label, 1, MetricResult(
                    metric=metric.name, value=float("nan"),
                    warnings=(f"error: {exc}",)))
            continue
        succeeded += 1
        for metric in metrics:
            try:
                result = metric(series)
            except (DataError, NumericalError) as exc:
                result = MetricResult(metric=metric.name, value=float("nan"),
                                      warnings=(f"error: {exc}",))
            report.add_result(series.label or "series", 1, result)
    if args.rescale:
        rescaled_scores_transform(report)
    _emit(report, args)
    return EXIT_OK if succeeded else EXIT_DATA


def _cmd_mse(args) -> int:
    config = _config_from(args)
    inputs = _gather_inputs(args)
    if len(inputs) != 1:
        raise DataError("mse takes exactly one input")
    item = inputs[0]
    series = item if isinstance(item, Series) else read_series(item)
    if args.fixed_r and "sampen" in config.metrics:
        from .core import summary
        from dataclasses import replace
        r_abs = config.r_factor * summary(series).sd
        config = replace(config, r_factor=r_abs, r_mode="absolute")
    profile = mse_sweep(series, config.scales, build_metrics(config),
                        partial="mean" if args.partial_blocks else "drop")
    report = ExperimentReport()
    label = series.label or "series"
    for scale in profile.scales:
        for name in profile.metrics:
            report.add_result(label, scale, profile.results[(scale, name)])
    _emit(report, args)
    return EXIT_OK


def _cmd_generate(args) -> int:
    spec = _load_spec(args.spec)
    series = build_series(spec)
    if args.out:
        write_series(series, args.out)
    else:
        for v in series.values:
            sys.stdout.write(f"{v:.17g}\n")
    return EXIT_OK


def _cmd_reproduce(args) -> int:
    config = _config_from(args)
    result = reproduce(
        args.experiment,
        data_dir=args.data_dir,
        seed=args.seed if args.seed is not None else DEFAULT_SEED,
        replications=args.replications,
        config=config,
    )
    for line in result.summary_lines():
        print(line)
    if result.report.rows and args.out:
        write_report(result.report, args.format, args.out)
    elif result.report.rows and args.print_table:
        sys.stdout.write(render_report(result.report, args.format))
    return EXIT_OK


def _cmd_compare_groups(args) -> int:
    config = _config_from(args)
    report, tests = compare_groups(
        args.group_a, args.group_b, config,
        group_names=(args.name_a, args.name_b),
    )
    for metric, res in tests.items():
        print(f"{metric}: t = {res.t_statistic:.4f}, df = {res.df:.1f}, "
              f"p = {res.p_value:.4g} (means {res.mean_a:.4f} vs {res.mean_b:.4f})")
    if args.plot:
        write_plot(report, "box_by_group", args.plot)
    if args.out:
        write_report(report, args.format, args.out)
    return EXIT_OK


def _cmd_plot(args) -> int:
    report = read_report_json(args.report)
    if args.rescale:
        rescaled_scores_transform(report)
    write_plot(report, args.kind, args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="tscomplex",
                     description="entropy and randomness-test toolkit for time series")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[], help="score series at scale 1")
    p.add_argument("inputs", nargs="*", help="series files (plain lines)")
    p.add_argument("--spec", action="append", dest="specs",
                   help="generator spec, inline JSON or a path to a JSON file")
    p.add_argument("--rescale", action="store_true",
                   help="attach the [0,1]-rescaled comparison column")
    _add_metric_flags(p)
    _add_io_flags(p)
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("mse", help="multi-scale sweep of one series")
    p.add_argument("inputs", nargs="*", help="series file")
    p.add_argument("--spec", action="append", dest="specs")
    p.add_argument("--partial-blocks", action="store_true",
                   help="average the trailing remainder into a short final block")
    p.add_argument("--fixed-r", action="store_true",
                   help="hold the sample-entropy tolerance at the original series' "
                        "0.2*SD instead of recomputing per scale")
    _add_metric_flags(p)
    _add_io_flags(p)
    p.set_defaults(func=_cmd_mse)

    p = sub.add_parser("generate", help="emit a series file from a generator spec")
    p.add_argument("--spec", required=True, help="inline JSON or a path to a JSON file")
    p.add_argument("--out", help="output path (default: stdout)")
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("reproduce", help="regenerate a reference table and check it")
    p.add_argument("experiment", choices=EXPERIMENTS)
    p.add_argument("--data-dir", help="directory with user-supplied data files")
    p.add_argument("--replications", type=int, default=None)
    p.add_argument("--print-table", action="store_true",
                   help="also print the full report table")
    _add_metric_flags(p)
    _add_io_flags(p)
    p.set_defaults(func=_cmd_reproduce)

    p = sub.add_parser("compare-groups", help="score two groups and t-test each metric")
    p.add_argument("--a", dest="group_a", nargs="+", required=True, metavar="FILE")
    p.add_argument("--b", dest="group_b", nargs="+", required=True, metavar="FILE")
    p.add_argument("--name-a", default="A")
    p.add_argument("--name-b", default="B")
    p.add_argument("--plot", help="write a box_by_group SVG here")
    _add_metric_flags(p)
    _add_io_flags(p)
    p.set_defaults(func=_cmd_compare_groups)

    p = sub.add_parser("plot", help="render an SVG chart from a JSON report")
    p.add_argument("report", help="report JSON path")
    p.add_argument("--kind", choices=("line_by_scale", "grouped_bars", "box_by_group"),
                   required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--rescale", action="store_true")
    p.set_defaults(func=_cmd_plot)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NumericalError as exc:
        print(f"tscomplex: numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except DataError as exc:
        print(f"tscomplex: data error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
