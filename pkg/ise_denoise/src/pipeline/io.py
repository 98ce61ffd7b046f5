"""CSV files exchanged between subcommands.

Trace CSV::

    time_s,V_K,V_Ca,V_NO3,V_NH4,C_K,C_Ca,C_NO3,C_NH4,stable

Dataset CSV is the trace layout without ``time_s`` and ``stable``. With a
voltage window of ``w`` the current voltages are followed by ``V_<ion>_lag<k>``
columns for ``k = 1 .. w-1``. Numbers are written with 17 significant digits
and the decimal separator is always a dot.
"""

import glob
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from ise_denoise.src.chem import CANONICAL_ORDER
from ise_denoise.src.errors import DomainError, ParseError
from ise_denoise.src.neuralnet import Dataset
from ise_denoise.src.sim import Trace
from ise_denoise.src.tables import numeric_block, read_table, write_table


def voltage_columns(channels: Sequence[str] = CANONICAL_ORDER, window: int = 1) -> List[str]:
    columns = [f"V_{name}" for name in channels]
    for lag in range(1, window):
        columns.extend(f"V_{name}_lag{lag}" for name in channels)
    return columns


def concentration_columns(channels: Sequence[str] = CANONICAL_ORDER) -> List[str]:
    return [f"C_{name}" for name in channels]


def trace_columns(channels: Sequence[str] = CANONICAL_ORDER) -> List[str]:
    return ["time_s", *voltage_columns(channels), *concentration_columns(channels), "stable"]


def resolve_paths(pattern: str) -> List[Path]:
    """Files matching ``pattern`` in sorted order; a plain path matches itself."""
    paths = sorted(Path(p) for p in glob.glob(pattern))
    if not paths:
        raise FileNotFoundError(f"no files match {pattern!r}")
    return paths


def trace_frame(trace: Trace) -> pd.DataFrame:
    columns = trace_columns(trace.channels)
    width = len(trace.channels)
    frame = pd.DataFrame(
        np.column_stack([trace.times, trace.voltages, trace.concentrations]).reshape(
            len(trace), 1 + 2 * width
        ),
        columns=columns[:-1],
    )
    frame["stable"] = np.asarray(trace.stable, dtype=np.int64)
    return frame


def write_trace(path: Path, trace: Trace) -> None:
    """Write one trace in the trace CSV layout.

    Args:
        path: Destination file, overwritten if it exists.
        trace: Samples to write; ``stable`` is written as ``1`` or ``0``.
    """
    write_table(trace_frame(trace), path)


def _first_line(rows: pd.DataFrame, mask: np.ndarray) -> int:
    return int(rows.index[int(np.flatnonzero(mask)[0])])


def ingest_trace(path: Path, channels: Sequence[str] = CANONICAL_ORDER) -> Trace:
    """Read a trace CSV whose header matches the schema exactly."""
    expected = trace_columns(channels)
    header, rows = read_table(path)
    if header != expected:
        missing = [c for c in expected if c not in header]
        detail = f"missing {', '.join(missing)}" if missing else "columns out of order"
        raise ParseError(f"trace header must be {','.join(expected)} ({detail})", 1)

    width = len(channels)
    data = numeric_block(rows, expected)
    flags = data[:, -1]
    unflagged = (flags != 0.0) & (flags != 1.0)
    if unflagged.any():
        line = _first_line(rows, unflagged)
        raise ParseError(f"stable must be 0 or 1, got {rows.at[line, rows.columns[-1]]!r}", line)
    stalled = np.concatenate([[False], np.diff(data[:, 0]) <= 0])
    if stalled.any():
        position = int(np.flatnonzero(stalled)[0])
        raise ParseError(
            f"time {data[position, 0]} does not increase past {data[position - 1, 0]}",
            int(rows.index[position]),
        )
    negative = (data[:, 1 + width : 1 + 2 * width] < 0).any(axis=1)
    if negative.any():
        raise ParseError("concentrations must be >= 0", _first_line(rows, negative))

    return Trace(
        times=data[:, 0],
        voltages=data[:, 1 : 1 + width],
        concentrations=data[:, 1 + width : 1 + 2 * width],
        stable=flags == 1.0,
        channels=tuple(channels),
    )


def write_dataset(path: Path, dataset: Dataset) -> None:
    """Write a dataset CSV, voltage columns (lags included) before concentrations.

    Args:
        path: Destination file, overwritten if it exists.
        dataset: Rows to write; ``dataset.window`` sets the lag columns.
    """
    header = [
        *voltage_columns(dataset.channels, dataset.window),
        *concentration_columns(dataset.channels),
    ]
    values = np.hstack([dataset.inputs, dataset.targets]).reshape(len(dataset), len(header))
    write_table(pd.DataFrame(values, columns=header), path)


def _window_of(header: Sequence[str], channels: Sequence[str]) -> int:
    voltages = [column for column in header if column.startswith("V_")]
    if not voltages or len(voltages) % len(channels):
        raise ParseError("dataset header has no complete set of voltage columns", 1)
    window = len(voltages) // len(channels)
    if list(voltages) != voltage_columns(channels, window) or header[: len(voltages)] != voltages:
        raise ParseError(
            f"voltage columns must be {','.join(voltage_columns(channels, window))}", 1
        )
    return window


def read_voltage_table(
    path: Path, channels: Sequence[str] = CANONICAL_ORDER
) -> Tuple[np.ndarray, Optional[np.ndarray], int]:
    """``(inputs, targets or None, window)`` from a dataset CSV.

    Concentration columns are optional; when present they must be complete.
    """
    header, rows = read_table(path)
    window = _window_of(header, channels)
    n_inputs = window * len(channels)
    tail = header[n_inputs:]
    if tail and tail != concentration_columns(channels):
        raise ParseError(
            f"concentration columns must be {','.join(concentration_columns(channels))}", 1
        )
    data = numeric_block(rows, header)
    targets = data[:, n_inputs:] if tail else None
    return data[:, :n_inputs], targets, window


def read_dataset(path: Path, channels: Sequence[str] = CANONICAL_ORDER) -> Dataset:
    """Load a dataset CSV for training or scoring.

    Args:
        path: Dataset CSV written by ``write_dataset``.
        channels: Ion order of the voltage and concentration columns.

    Returns:
        The dataset, with the voltage window read from the lag columns.

    Raises:
        ParseError: If the header is malformed, a cell is not a number or
            the concentration columns are missing.
        DomainError: If the file has no data rows.
    """
    inputs, targets, window = read_voltage_table(path, channels)
    if targets is None:
        raise ParseError(f"{path} has no concentration columns", 1)
    if len(inputs) == 0:
        raise DomainError(f"{path} has no data rows")
    return Dataset(inputs, targets, tuple(channels), window)


def write_predictions(
    path: Path, predictions: np.ndarray, channels: Sequence[str] = CANONICAL_ORDER
) -> None:
    columns = concentration_columns(channels)
    values = np.asarray(predictions, dtype=np.float64).reshape(-1, len(columns))
    write_table(pd.DataFrame(values, columns=columns), path)
