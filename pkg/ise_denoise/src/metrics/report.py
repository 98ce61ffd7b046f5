"""Report files and the method comparison table."""

from pathlib import Path
from typing import Dict, Mapping

import pandas as pd

from ise_denoise.src.errors import DomainError, ParseError
from ise_denoise.src.metrics.distribution import DistributionSummary
from ise_denoise.src.metrics.scores import MetricsReport
from ise_denoise.src.tables import render_table

REPORT_KEYS = ("mse", "r2", "mape_percent", "n", "mape_mean", "mape_sd", "tail_prob_5pct")
COMPARISON_COLUMNS = ("method", "mse", "r2", "mape_percent")


def _fmt(value: float) -> str:
    return format(float(value), ".17g")


def render_report(report: MetricsReport, distribution: DistributionSummary) -> str:
    """``key value`` lines for one evaluated method."""
    values = {
        "mse": _fmt(report.mse),
        "r2": _fmt(report.r_squared),
        "mape_percent": _fmt(report.mape_percent),
        "n": str(report.n),
        "mape_mean": _fmt(distribution.mean),
        "mape_sd": _fmt(distribution.sd),
        "tail_prob_5pct": _fmt(distribution.tail_prob_at_5pct),
    }
    return "".join(f"{key} {values[key]}\n" for key in REPORT_KEYS)


def write_report(
    path: Path, report: MetricsReport, distribution: DistributionSummary
) -> None:
    Path(path).write_text(render_report(report, distribution), encoding="utf-8")


def read_report(path: Path) -> Dict[str, float]:
    """Parse a report file into a key -> value mapping."""
    values: Dict[str, float] = {}
    with open(path, encoding="utf-8") as handle:
        for number, line in enumerate(handle, start=1):
            line = line.strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ParseError(f"expected 'key value', got {line!r}", number)
            key, raw = parts
            try:
                values[key] = float(raw)
            except ValueError:
                raise ParseError(f"non-numeric value for {key}: {raw!r}", number) from None
    missing = [key for key in ("mse", "r2", "mape_percent", "n") if key not in values]
    if missing:
        raise ParseError(f"report {path} lacks keys: {', '.join(missing)}")
    return values


def report_from_values(values: Mapping[str, float]) -> MetricsReport:
    """Rebuild the core scores of a parsed report file.

    Args:
        values: Mapping returned by ``read_report``.

    Returns:
        The report; distribution keys in ``values`` are ignored.
    """
    return MetricsReport(
        mse=values["mse"],
        mape_percent=values["mape_percent"],
        r_squared=values["r2"],
        n=int(values["n"]),
    )


def histogram_csv(distribution: DistributionSummary) -> str:
    """Histogram of one error distribution as CSV.

    Args:
        distribution: Summary whose bins are written.

    Returns:
        ``bin_lo,bin_hi,count`` text, one row per bin.
    """
    edges = distribution.bin_edges
    frame = pd.DataFrame(
        {
            "bin_lo": pd.Series(edges[:-1], dtype="float64"),
            "bin_hi": pd.Series(edges[1:], dtype="float64"),
            "count": pd.Series(distribution.counts, dtype="int64"),
        }
    )
    return render_table(frame)


def box_csv(summaries: Mapping[str, DistributionSummary]) -> str:
    """Five-number summaries, one row per metric, for box plots."""
    frame = pd.DataFrame(
        [summary.quartiles for summary in summaries.values()],
        columns=["q0", "q1", "q2", "q3", "q4"],
        dtype="float64",
    )
    frame.insert(0, "metric", list(summaries))
    return render_table(frame)


class ComparisonTable:
    """Methods as rows, MSE / R² / MAPE as columns, in insertion order."""

    def __init__(self, reports: Mapping[str, MetricsReport]):
        if not reports:
            raise DomainError("a comparison table needs at least one report")
        self.reports = dict(reports)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            {
                "method": list(self.reports),
                "mse": [r.mse for r in self.reports.values()],
                "r2": [r.r_squared for r in self.reports.values()],
                "mape_percent": [r.mape_percent for r in self.reports.values()],
            },
            columns=list(COMPARISON_COLUMNS),
        )

    def to_csv(self) -> str:
        return render_table(self.to_frame())

    def to_text(self) -> str:
        header = ("Method", "MSE", "R^2", "MAPE (%)")
        body = [
            (name, f"{r.mse:.3e}", f"{r.r_squared:.3f}", f"{r.mape_percent:.3f}")
            for name, r in self.reports.items()
        ]
        widths = [max(len(row[i]) for row in [header, *body]) for i in range(4)]
        lines = [
            "  ".join(
                cell.ljust(widths[i]) if i == 0 else cell.rjust(widths[i])
                for i, cell in enumerate(row)
            )
            for row in [header, *body]
        ]
        return "\n".join(lines) + "\n"


def comparison_table(reports: Mapping[str, MetricsReport]) -> ComparisonTable:
    """One row per named report."""
    return ComparisonTable(reports)
