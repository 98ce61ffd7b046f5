"""Calibration CSV: ``ion,a,b,r_squared,n_points``, one row per ion."""

from pathlib import Path
from typing import Dict, Mapping

import pandas as pd

from ise_denoise.src.chem import CANONICAL_ORDER, IonRegistry, default_registry
from ise_denoise.src.calibrate.exponential import CalibrationFit
from ise_denoise.src.errors import DomainError, ParseError
from ise_denoise.src.tables import numeric_block, read_table, render_table

CALIBRATION_COLUMNS = ("ion", "a", "b", "r_squared", "n_points")


def _ordered_names(names) -> list[str]:
    known = [name for name in CANONICAL_ORDER if name in names]
    return known + sorted(name for name in names if name not in CANONICAL_ORDER)


def calibration_frame(fits: Mapping[str, CalibrationFit]) -> pd.DataFrame:
    names = _ordered_names(fits)
    return pd.DataFrame(
        {
            "ion": names,
            "a": [fits[name].a for name in names],
            "b": [fits[name].b for name in names],
            "r_squared": [fits[name].r_squared for name in names],
            "n_points": pd.Series([fits[name].n_points for name in names], dtype="int64"),
        },
        columns=list(CALIBRATION_COLUMNS),
    )


def render_calibration(fits: Mapping[str, CalibrationFit]) -> str:
    return render_table(calibration_frame(fits))


def write_calibration(path: Path, fits: Mapping[str, CalibrationFit]) -> None:
    """Write fits in canonical ion order.

    Args:
        path: Destination file, overwritten if it exists.
        fits: Fits keyed by ion name; unknown names follow the canonical
            ions alphabetically.
    """
    Path(path).write_text(render_calibration(fits), encoding="utf-8")


def read_calibration(
    path: Path, registry: IonRegistry | None = None
) -> Dict[str, CalibrationFit]:
    """Fits keyed by ion name."""
    registry = registry or default_registry()
    header, rows = read_table(path)
    if tuple(header) != CALIBRATION_COLUMNS:
        raise ParseError(
            f"calibration header must be {','.join(CALIBRATION_COLUMNS)}", 1
        )
    values = numeric_block(rows.iloc[:, 1:], CALIBRATION_COLUMNS[1:])
    fits: Dict[str, CalibrationFit] = {}
    for (index, name), (a, b, r_squared, n_points) in zip(rows.iloc[:, 0].items(), values):
        line = int(index)
        if name in fits:
            raise ParseError(f"duplicate calibration for {name}", line)
        if not float(n_points).is_integer():
            raise ParseError(f"n_points must be an integer, got {n_points}", line)
        try:
            fits[name] = CalibrationFit(
                registry.get(name), float(a), float(b), float(r_squared), int(n_points)
            )
        except ValueError as e:
            raise ParseError(str(e), line) from None
    if not fits:
        raise ParseError(f"calibration file {path} has no rows")
    return fits


def merge_calibration(
    existing: Mapping[str, CalibrationFit], updates: Mapping[str, CalibrationFit]
) -> Dict[str, CalibrationFit]:
    """``existing`` with every ion in ``updates`` replaced."""
    if not updates:
        raise DomainError("nothing to merge")
    merged = dict(existing)
    merged.update(updates)
    return merged
