"""Per-ion exponential calibration ``C = a * exp(b * V)``.

The fit log-linearizes to ``ln C = ln a + b V`` and solves ordinary least
squares, so residuals are weighted in the log domain rather than in
concentration units. The reported R² is measured in concentration units
against the fitted curve.
"""

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence, Tuple

import numpy as np

from ise_denoise.src.chem import (
    CANONICAL_ORDER,
    ElectrodeSpec,
    IonSpecies,
    calibration_forward,
    default_registry,
)
from ise_denoise.src.errors import DomainError, RankError, StateError
from ise_denoise.src.metrics.scores import r_squared_from_sums
from ise_denoise.src.sim import Trace


@dataclass(frozen=True)
class CalibrationFit:
    """Fitted calibration of one electrode."""

    ion: IonSpecies
    a: float
    b: float
    r_squared: float
    n_points: int

    def __post_init__(self) -> None:
        if not self.a > 0:
            raise DomainError(f"calibration a must be positive, got {self.a}")
        if self.n_points < 2:
            raise DomainError(f"a calibration needs >= 2 points, got {self.n_points}")
        if self.r_squared > 1:
            raise DomainError(f"r_squared cannot exceed 1, got {self.r_squared}")

    def electrode(self) -> ElectrodeSpec:
        return ElectrodeSpec(self.ion).with_calibration(self.a, self.b)

    def concentration(self, voltages) -> np.ndarray:
        return self.a * np.exp(self.b * np.asarray(voltages, dtype=np.float64))


def fit_exponential(
    points: Iterable[Tuple[float, float]], ion: IonSpecies
) -> CalibrationFit:
    """Least-squares fit of ``ln C`` against ``V`` over ``(V, C)`` pairs."""
    data = np.asarray(list(points), dtype=np.float64).reshape(-1, 2)
    if data.shape[0] < 2:
        raise DomainError(f"{ion.name}: a calibration needs at least two points")
    voltage, conc = data[:, 0], data[:, 1]
    if not np.all(np.isfinite(data)):
        raise DomainError(f"{ion.name}: calibration points must be finite")
    if np.any(conc <= 0):
        raise DomainError(f"{ion.name}: calibration concentrations must be positive")

    log_conc = np.log(conc)
    dv = voltage - voltage.mean()
    sxx = float(np.dot(dv, dv))
    if sxx == 0.0:
        raise RankError(f"{ion.name}: every calibration voltage is identical")
    b = float(np.dot(dv, log_conc - log_conc.mean()) / sxx)
    a = float(np.exp(log_conc.mean() - b * voltage.mean()))

    fitted = a * np.exp(b * voltage)
    ss_res = float(np.sum((conc - fitted) ** 2))
    ss_tot = float(np.sum((conc - conc.mean()) ** 2))
    r2 = r_squared_from_sums(ss_res, ss_tot, float(np.sum(conc**2)))
    return CalibrationFit(ion, a, b, r2, int(data.shape[0]))


def calibration_points(
    traces: Sequence[Trace],
    ion: str,
    floor: float,
    stable_only: bool = False,
) -> np.ndarray:
    """``(V, C)`` rows of ``ion``'s channel where its concentration reaches ``floor``."""
    chunks = []
    for trace in traces:
        if ion not in trace.channels:
            raise DomainError(f"trace has no {ion} channel; channels are {trace.channels}")
        column = trace.channels.index(ion)
        keep = trace.concentrations[:, column] >= floor
        if stable_only:
            keep &= trace.stable
        chunks.append(
            np.column_stack(
                [trace.voltages[keep, column], trace.concentrations[keep, column]]
            )
        )
    points = np.concatenate(chunks) if chunks else np.zeros((0, 2))
    if points.shape[0] < 2:
        raise DomainError(f"fewer than two {ion} samples reach the floor {floor}")
    return points


def fit_from_traces(
    traces: Sequence[Trace],
    ion: str,
    floor: float,
    stable_only: bool = False,
) -> CalibrationFit:
    species = default_registry().get(ion)
    return fit_exponential(calibration_points(traces, ion, floor, stable_only), species)


def _ordered(fits: Mapping[str, CalibrationFit], channels: Sequence[str]):
    missing = [name for name in channels if name not in fits]
    if missing:
        raise StateError(f"no calibration for: {', '.join(missing)}")
    return [fits[name] for name in channels]


def ten_point_calibration(
    fits: Mapping[str, CalibrationFit],
    voltages: Sequence[float],
    channels: Sequence[str] = CANONICAL_ORDER,
) -> np.ndarray:
    """Concentrations from one voltage row, each electrode calibrated on its own."""
    ordered = _ordered(fits, channels)
    voltages = np.asarray(voltages, dtype=np.float64).reshape(-1)
    if voltages.shape[0] != len(ordered):
        raise DomainError(f"expected {len(ordered)} voltages, got {voltages.shape[0]}")
    return np.array(
        [calibration_forward(fit.electrode(), float(v)) for fit, v in zip(ordered, voltages)]
    )


def apply_calibration(
    fits: Mapping[str, CalibrationFit],
    voltages,
    channels: Sequence[str] = CANONICAL_ORDER,
) -> np.ndarray:
    """``ten_point_calibration`` over every row of an ``m x channels`` matrix."""
    ordered = _ordered(fits, channels)
    voltages = np.atleast_2d(np.asarray(voltages, dtype=np.float64))
    if voltages.shape[1] < len(ordered):
        raise DomainError(f"expected {len(ordered)} voltage columns, got {voltages.shape[1]}")
    return np.column_stack(
        [fit.concentration(voltages[:, j]) for j, fit in enumerate(ordered)]
    )
