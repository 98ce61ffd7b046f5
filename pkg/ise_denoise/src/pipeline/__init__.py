"""Trace files, datasets, pipeline config and the command line."""

from ise_denoise.src.pipeline.config import (
    PipelineConfig,
    build_config,
    load_config,
    parse_config_text,
    render_config,
)
from ise_denoise.src.pipeline.dataset import SplitSpec, build_dataset, split
from ise_denoise.src.pipeline.io import (
    ingest_trace,
    read_dataset,
    read_voltage_table,
    write_dataset,
    write_predictions,
    write_trace,
)

__all__ = [
    "PipelineConfig",
    "SplitSpec",
    "build_config",
    "build_dataset",
    "ingest_trace",
    "load_config",
    "parse_config_text",
    "read_dataset",
    "read_voltage_table",
    "render_config",
    "split",
    "write_dataset",
    "write_predictions",
    "write_trace",
]
