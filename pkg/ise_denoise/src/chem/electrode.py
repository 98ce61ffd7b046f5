"""Electrode parameters and the electrochemical forward equations."""

import math
from dataclasses import dataclass, field
from enum import Enum
from types import MappingProxyType
from typing import Iterable, Mapping, Optional

from ise_denoise.src.chem.ions import DEFAULT_CONSTANTS, IonSpecies, PhysicalConstants
from ise_denoise.src.chem.solution import (
    IDEAL_SOLUTION,
    ActivityModel,
    SolutionComposition,
    activity,
    nernst_slope,
)
from ise_denoise.src.errors import DomainError, StateError

SAME_SIGN_SELECTIVITY = 0.05
OPPOSITE_SIGN_SELECTIVITY = 0.01


class ExponentConvention(str, Enum):
    """Exponent applied to interfering activities inside the logarithm.

    ``paper_literal`` raises a_i to its own charge z_i and is also accepted
    as ``charge_power``; ``charge_ratio`` uses the textbook z_target / z_i.
    """

    CHARGE_POWER = "paper_literal"
    CHARGE_RATIO = "charge_ratio"

    @classmethod
    def _missing_(cls, value: object) -> Optional["ExponentConvention"]:
        if isinstance(value, str) and value.strip().lower() == "charge_power":
            return cls.CHARGE_POWER
        return None


@dataclass(frozen=True)
class ElectrodeSpec:
    """One ion-selective electrode.

    ``selectivity`` maps each interfering ion to its coefficient k_i.
    ``calib_a`` (mmol/L) and ``calib_b`` (1/V) hold the exponential calibration
    once it has been fitted.
    """

    target: IonSpecies
    E0: float = 0.0
    selectivity: Mapping[IonSpecies, float] = field(default_factory=dict)
    exponent_convention: ExponentConvention = ExponentConvention.CHARGE_POWER
    calib_a: Optional[float] = None
    calib_b: Optional[float] = None

    def __post_init__(self) -> None:
        if self.target in self.selectivity:
            raise DomainError(
                f"electrode for {self.target.name} lists its own ion as interferer"
            )
        for ion, k in self.selectivity.items():
            if not k >= 0:
                raise DomainError(
                    f"selectivity of {ion.name} on {self.target.name} must be >= 0, got {k}"
                )
        if self.calib_a is not None and not self.calib_a > 0:
            raise DomainError(f"calib_a must be positive, got {self.calib_a}")
        object.__setattr__(self, "selectivity", MappingProxyType(dict(self.selectivity)))
        object.__setattr__(
            self, "exponent_convention", ExponentConvention(self.exponent_convention)
        )

    @property
    def name(self) -> str:
        return self.target.name

    def interference_exponent(self, interferer: IonSpecies) -> float:
        """Power p_i applied to an interfering activity.

        Args:
            interferer: Ion listed in ``selectivity``.

        Returns:
            ``z_i`` under ``paper_literal``, ``z_target / z_i`` under
            ``charge_ratio``.
        """
        if self.exponent_convention is ExponentConvention.CHARGE_RATIO:
            return self.target.charge / interferer.charge
        return float(interferer.charge)

    def with_calibration(self, a: float, b: float) -> "ElectrodeSpec":
        """Copy of this electrode carrying a fitted exponential calibration.

        Args:
            a: Coefficient of ``C = a * exp(b * V)`` in mmol/L, positive.
            b: Exponent coefficient in 1/V.

        Returns:
            A new spec; this one is unchanged.
        """
        return ElectrodeSpec(
            self.target,
            self.E0,
            dict(self.selectivity),
            self.exponent_convention,
            a,
            b,
        )


def default_selectivity(
    target: IonSpecies,
    ions: Iterable[IonSpecies],
    same_sign: float = SAME_SIGN_SELECTIVITY,
    opposite_sign: float = OPPOSITE_SIGN_SELECTIVITY,
) -> dict[IonSpecies, float]:
    """Selectivity map over every other ion, split by charge sign."""
    return {
        ion: same_sign if (ion.charge > 0) == (target.charge > 0) else opposite_sign
        for ion in ions
        if ion != target
    }


def nikolsky_eisenman(
    electrode: ElectrodeSpec,
    composition: SolutionComposition,
    activity_model: ActivityModel = IDEAL_SOLUTION,
    constants: PhysicalConstants = DEFAULT_CONSTANTS,
) -> float:
    """Membrane potential in volts with interfering-ion terms.

    ``E0 + RT/(zF) * ln(a + sum_i k_i * a_i ** p_i)``. Interferers missing from
    the composition contribute nothing; zero coefficients are skipped.
    """
    argument = activity(composition, activity_model, electrode.target)
    for ion, k in electrode.selectivity.items():
        if k == 0 or ion not in composition.concentrations:
            continue
        a_i = activity(composition, activity_model, ion)
        exponent = electrode.interference_exponent(ion)
        if a_i == 0:
            if exponent < 0:
                raise DomainError(
                    f"electrode {electrode.name}: zero activity of {ion.name} "
                    "under a negative exponent"
                )
            continue
        argument += k * a_i**exponent

    if not (argument > 0 and math.isfinite(argument)):
        raise DomainError(
            f"electrode {electrode.name}: logarithm argument must be positive and finite, got {argument}"
        )
    slope = nernst_slope(electrode.target.charge, composition.temperature, constants)
    return electrode.E0 + slope * math.log(argument)


def calibration_forward(electrode: ElectrodeSpec, voltage: float) -> float:
    """Concentration in mmol/L from a voltage via ``a * exp(b * V)``."""
    if electrode.calib_a is None or electrode.calib_b is None:
        raise StateError(f"electrode {electrode.name} has no calibration")
    return electrode.calib_a * math.exp(electrode.calib_b * voltage)
