"""The experiment report table and its CSV/JSON serialization.

Fixed CSV schema: header ``label,scale,metric,value,statistic,df,p_value,
warnings``, one row per (label, scale, metric) key, numbers printed with 6
significant digits, warnings joined with ';'. The JSON form is an array of
row objects with the same field names at full precision.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Literal, Sequence

from .core import DataError, MetricResult

__all__ = ["ReportRow", "ExperimentReport", "write_report", "read_report_json"]

CSV_COLUMNS = ("label", "scale", "metric", "value", "statistic", "df", "p_value", "warnings")


@dataclass(frozen=True)
class ReportRow:
    label: str
    scale: int
    metric: str
    value: float
    statistic: float | None = None
    df: float | None = None
    p_value: float | None = None
    warnings: tuple[str, ...] = ()

    @property
    def key(self) -> tuple[str, int, str]:
        return (self.label, self.scale, self.metric)

    @classmethod
    def from_result(cls, label: str, scale: int, result: MetricResult) -> "ReportRow":
        return cls(
            label=label,
            scale=scale,
            metric=result.metric,
            value=result.value,
            statistic=result.statistic,
            df=result.df,
            p_value=result.p_value,
            warnings=result.warnings,
        )


@dataclass
class ExperimentReport:
    """Rows keyed uniquely by (label, scale, metric), plus optional named
    plot-transform columns aligned with the rows."""

    rows: list[ReportRow] = field(default_factory=list)
    transforms: dict[str, list[float]] = field(default_factory=dict)

    def __post_init__(self):
        keys = [r.key for r in self.rows]
        if len(set(keys)) != len(keys):
            raise DataError("duplicate report keys")
        self._index = {r.key: r for r in self.rows}

    def add(self, row: ReportRow) -> None:
        if row.key in self._index:
            raise DataError(f"duplicate report key: {row.key}")
        self.rows.append(row)
        self._index[row.key] = row

    def add_result(self, label: str, scale: int, result: MetricResult) -> None:
        self.add(ReportRow.from_result(label, scale, result))

    def extend(self, rows: Iterable[ReportRow]) -> None:
        for row in rows:
            self.add(row)

    def get(self, label: str, scale: int, metric: str) -> ReportRow:
        try:
            return self._index[(label, scale, metric)]
        except KeyError:
            raise KeyError((label, scale, metric)) from None

    def labels(self) -> list[str]:
        seen: dict[str, None] = {}
        for r in self.rows:
            seen.setdefault(r.label)
        return list(seen)

    def metrics(self) -> list[str]:
        seen: dict[str, None] = {}
        for r in self.rows:
            seen.setdefault(r.metric)
        return list(seen)

    def set_transform(self, name: str, values: Sequence[float]) -> None:
        if len(values) != len(self.rows):
            raise DataError(
                f"transform {name!r} has {len(values)} values for {len(self.rows)} rows")
        self.transforms[name] = [float(v) for v in values]


def _fmt(value: float | None) -> str:
    if value is None:
        return ""
    return f"{value:.6g}"


def _row_cells(row: ReportRow) -> list[str]:
    return [
        row.label,
        str(row.scale),
        row.metric,
        _fmt(row.value),
        _fmt(row.statistic),
        _fmt(row.df),
        _fmt(row.p_value),
        ";".join(row.warnings),
    ]


def _csv_quote(cell: str) -> str:
    if any(ch in cell for ch in ',"\n'):
        return '"' + cell.replace('"', '""') + '"'
    return cell


def write_report(
    report: ExperimentReport,
    format: Literal["csv", "json"],
    path: str | Path,
) -> None:
    if not report.rows:
        raise DataError("empty report")
    Path(path).write_text(render_report(report, format), encoding="utf-8")


def render_report(report: ExperimentReport, format: Literal["csv", "json"]) -> str:
    """Serialize without touching the filesystem (used for stdout output)."""
    if not report.rows:
        raise DataError("empty report")
    if format == "csv":
        lines = [",".join(CSV_COLUMNS)]
        for row in report.rows:
            lines.append(",".join(_csv_quote(c) for c in _row_cells(row)))
        return "\n".join(lines) + "\n"
    if format == "json":
        objs = []
        for row in report.rows:
            objs.append({
                "label": row.label,
                "scale": row.scale,
                "metric": row.metric,
                # NaN marks a failed cell; encode as null to stay strict JSON
                "value": None if row.value != row.value else row.value,
                "statistic": row.statistic,
                "df": row.df,
                "p_value": row.p_value,
                "warnings": list(row.warnings),
            })
        return json.dumps(objs, indent=2) + "\n"
    raise ValueError(f"unknown report format: {format!r}")


def read_report_json(path: str | Path) -> ExperimentReport:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise DataError(f"{path}: invalid report JSON: {exc}") from exc
    if not isinstance(data, list):
        raise DataError(f"{path}: report JSON must be an array of row objects")
    report = ExperimentReport()
    for obj in data:
        report.add(ReportRow(
            label=obj["label"],
            scale=int(obj["scale"]),
            metric=obj["metric"],
            value=float("nan") if obj.get("value") is None else float(obj["value"]),
            statistic=None if obj.get("statistic") is None else float(obj["statistic"]),
            df=None if obj.get("df") is None else float(obj["df"]),
            p_value=None if obj.get("p_value") is None else float(obj["p_value"]),
            warnings=tuple(obj.get("warnings", ())),
        ))
    return report
