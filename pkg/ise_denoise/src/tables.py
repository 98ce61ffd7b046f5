"""CSV tables read and written through pandas.

Readers take every cell as a stripped string and index rows by their physical
line in the file, so header, field count and numeric checks can point at the
offending line. Writers print floats with 17 significant digits, which parse
back to the same double.
"""

import re
from pathlib import Path
from typing import List, Sequence, Tuple

import numpy as np
import pandas as pd

from ise_denoise.src.errors import ParseError

NUMBER_FORMAT = "%.17g"

_TOKENIZER_ERROR = re.compile(r"Expected (\d+) fields in line (\d+), saw (\d+)")


def _tokenizer_error(path: Path, error: pd.errors.ParserError) -> ParseError:
    match = _TOKENIZER_ERROR.search(str(error))
    if match is None:
        return ParseError(f"{path}: {str(error).strip()}")
    expected, line, saw = (int(group) for group in match.groups())
    return ParseError(f"expected {expected} fields, got {saw}", line)


def read_table(path: Path) -> Tuple[List[str], pd.DataFrame]:
    """Header cells and data rows of a CSV file.

    Args:
        path: File to read.

    Returns:
        The stripped header cells, and a frame of string cells with one row
        per non-blank data line, indexed by the 1-based line number. Short
        rows are padded with empty cells.

    Raises:
        ParseError: If the file is empty or a row has more fields than the
            header.
    """
    try:
        raw = pd.read_csv(
            path,
            header=None,
            dtype=str,
            keep_default_na=False,
            skip_blank_lines=False,
            encoding="utf-8",
        )
    except pd.errors.EmptyDataError:
        raise ParseError(f"{path} is empty", 1) from None
    except pd.errors.ParserError as e:
        raise _tokenizer_error(path, e) from None

    raw = raw.fillna("").apply(lambda column: column.str.strip())
    raw.index = raw.index + 1
    header = [str(cell) for cell in raw.iloc[0]]
    body = raw.iloc[1:]
    body = body[(body != "").any(axis=1)]
    return header, body


def numeric_block(rows: pd.DataFrame, columns: Sequence[str]) -> np.ndarray:
    """``rows`` as a float64 matrix; the first bad cell is a ParseError at its line."""
    if rows.empty:
        return np.zeros((0, len(columns)))
    values = rows.apply(pd.to_numeric, errors="coerce")
    bad = values.isna().to_numpy()
    if bad.any():
        position = int(np.flatnonzero(bad.any(axis=1))[0])
        column = int(np.flatnonzero(bad[position])[0])
        raise ParseError(
            f"non-numeric {columns[column]} value {rows.iat[position, column]!r}",
            int(rows.index[position]),
        )
    # Python's float parser keeps the round trip of 17-digit text exact.
    return rows.to_numpy(dtype=str).astype(np.float64)


def write_table(frame: pd.DataFrame, path: Path) -> None:
    frame.to_csv(
        path,
        index=False,
        float_format=NUMBER_FORMAT,
        lineterminator="\n",
        encoding="utf-8",
    )


def render_table(frame: pd.DataFrame) -> str:
    """CSV text of ``frame`` without its index."""
    return frame.to_csv(index=False, float_format=NUMBER_FORMAT, lineterminator="\n")
