"""Error metrics, error distributions and comparison reports."""

from ise_denoise.src.metrics.config import EvalConfig
from ise_denoise.src.metrics.distribution import (
    DEFAULT_TAIL_THRESHOLD,
    DistributionSummary,
    normal_upper_tail,
    summarize_distribution,
)
from ise_denoise.src.metrics.report import (
    ComparisonTable,
    box_csv,
    comparison_table,
    histogram_csv,
    read_report,
    render_report,
    report_from_values,
    write_report,
)
from ise_denoise.src.metrics.scores import (
    CONCENTRATION_FLOOR,
    MetricsReport,
    evaluate,
    mape,
    mse,
    per_sample_mape,
    per_sample_mse,
    r_squared,
)

__all__ = [
    "CONCENTRATION_FLOOR",
    "DEFAULT_TAIL_THRESHOLD",
    "ComparisonTable",
    "DistributionSummary",
    "EvalConfig",
    "MetricsReport",
    "box_csv",
    "comparison_table",
    "evaluate",
    "histogram_csv",
    "mape",
    "mse",
    "normal_upper_tail",
    "per_sample_mape",
    "per_sample_mse",
    "r_squared",
    "read_report",
    "render_report",
    "report_from_values",
    "summarize_distribution",
    "write_report",
]
