"""Exponential per-ion calibration and the quadratic regression baseline."""

from ise_denoise.src.calibrate.config import CalibConfig
from ise_denoise.src.calibrate.exponential import (
    CalibrationFit,
    apply_calibration,
    calibration_points,
    fit_exponential,
    fit_from_traces,
    ten_point_calibration,
)
from ise_denoise.src.calibrate.files import (
    CALIBRATION_COLUMNS,
    merge_calibration,
    read_calibration,
    render_calibration,
    write_calibration,
)
from ise_denoise.src.calibrate.quadratic import (
    DEFAULT_RIDGE,
    QuadraticModel,
    fit_quadratic,
    monomials,
    predict_quadratic,
)

__all__ = [
    "CALIBRATION_COLUMNS",
    "DEFAULT_RIDGE",
    "CalibConfig",
    "CalibrationFit",
    "QuadraticModel",
    "apply_calibration",
    "calibration_points",
    "fit_exponential",
    "fit_from_traces",
    "fit_quadratic",
    "merge_calibration",
    "monomials",
    "predict_quadratic",
    "read_calibration",
    "render_calibration",
    "ten_point_calibration",
    "write_calibration",
]
