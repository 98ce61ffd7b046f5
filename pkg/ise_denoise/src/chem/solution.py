"""Solution states, activities and the dilution-series arithmetic.

Concentrations are in mmol/L throughout. Activities use mol/L, so the ideal
activity of an ion is ``gamma * C / 1000``.
"""

import math
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping, Optional

from ise_denoise.src.chem.ions import (
    AMMONIUM,
    CALCIUM,
    DEFAULT_CONSTANTS,
    NITRATE,
    POTASSIUM,
    IonSpecies,
    PhysicalConstants,
)
from ise_denoise.src.errors import DomainError

STANDARD_TEMPERATURE = 298.15

# Yamazaki lettuce recipe reduced to the measured ions, at multiple 1
YAMAZAKI_BASE: Mapping[IonSpecies, float] = MappingProxyType(
    {POTASSIUM: 4.0, CALCIUM: 1.0, NITRATE: 4.0, AMMONIUM: 0.5}
)


@dataclass(frozen=True)
class SolutionComposition:
    """Per-ion concentrations (mmol/L) at temperature T (K)."""

    concentrations: Mapping[IonSpecies, float]
    temperature: float = STANDARD_TEMPERATURE

    def __post_init__(self) -> None:
        if not self.temperature > 0:
            raise DomainError(f"temperature must be positive, got {self.temperature}")
        for ion, value in self.concentrations.items():
            if not value >= 0:
                raise DomainError(
                    f"concentration of {ion.name} must be >= 0, got {value}"
                )
        object.__setattr__(
            self, "concentrations", MappingProxyType(dict(self.concentrations))
        )

    def concentration(self, ion: IonSpecies) -> float:
        try:
            return self.concentrations[ion]
        except KeyError:
            raise DomainError(f"ion {ion.name} is not part of the composition") from None

    def floored(self, floor: float) -> "SolutionComposition":
        """Copy with every concentration raised to at least ``floor``."""
        return SolutionComposition(
            {ion: max(value, floor) for ion, value in self.concentrations.items()},
            self.temperature,
        )


@dataclass(frozen=True)
class ActivityModel:
    """Per-ion activity coefficients; ions not listed use ``default_gamma``."""

    gamma: Mapping[IonSpecies, float] = field(default_factory=dict)
    default_gamma: float = 1.0

    def __post_init__(self) -> None:
        if not self.default_gamma > 0:
            raise DomainError("default activity coefficient must be positive")
        for ion, value in self.gamma.items():
            if not value > 0:
                raise DomainError(
                    f"activity coefficient of {ion.name} must be positive, got {value}"
                )
        object.__setattr__(self, "gamma", MappingProxyType(dict(self.gamma)))

    def coefficient(self, ion: IonSpecies) -> float:
        return self.gamma.get(ion, self.default_gamma)


IDEAL_SOLUTION = ActivityModel()


@dataclass(frozen=True)
class ChemicalPotentialSpec:
    """Molar chemical potential and its standard-condition value, J/mol."""

    mu: float
    mu_theta: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.mu) and math.isfinite(self.mu_theta)):
            raise DomainError("chemical potentials must be finite")


def activity(
    composition: SolutionComposition,
    model: ActivityModel,
    ion: IonSpecies,
) -> float:
    """Thermodynamic activity ``gamma * C`` with C converted to mol/L."""
    return model.coefficient(ion) * composition.concentration(ion) / 1000.0


def activity_from_potential(
    spec: ChemicalPotentialSpec,
    T: float,
    R: Optional[float] = None,
) -> float:
    """Activity from chemical potentials, ``exp((mu - mu_theta) / (R T))``."""
    if not T > 0:
        raise DomainError(f"temperature must be positive, got {T}")
    gas_constant = DEFAULT_CONSTANTS.R if R is None else R
    return math.exp((spec.mu - spec.mu_theta) / (gas_constant * T))


def nernst_slope(charge: int, T: float, constants: PhysicalConstants = DEFAULT_CONSTANTS) -> float:
    """RT/(zF) in volts per natural-log unit of activity."""
    if not T > 0:
        raise DomainError(f"temperature must be positive, got {T}")
    return constants.R * T / (charge * constants.F)


def dilution_multiple(
    n: int,
    v_add: float,
    v0: float,
    strength: float,
    v_solute: Optional[float] = None,
) -> float:
    """Strength after ``n`` additions of concentrate into an initially pure volume.

    Args:
        n: Number of additions made so far
        v_add: Volume of each addition, mL
        v0: Initial volume of distilled water, mL
        strength: Concentrate strength as a multiple of the base recipe
        v_solute: Part of each addition that carries this ion's concentrate,
            mL. Defaults to ``v_add``; a mixture droplet made of three 10 mL
            salt concentrates has ``v_add=30`` and ``v_solute=10``.

    Returns:
        ``strength * n * v_solute / (v0 + n * v_add)``
    """
    if n < 0:
        raise DomainError(f"step count must be >= 0, got {n}")
    if not (v_add > 0 and v0 > 0 and strength > 0):
        raise DomainError("v_add, v0 and strength must be strictly positive")
    v_solute = v_add if v_solute is None else v_solute
    if not 0 < v_solute <= v_add:
        raise DomainError(f"v_solute must lie in (0, v_add], got {v_solute}")
    return strength * n * v_solute / (v0 + n * v_add)


def yamazaki_composition(
    multiple: float,
    temperature: float = STANDARD_TEMPERATURE,
    base: Mapping[IonSpecies, float] = YAMAZAKI_BASE,
) -> SolutionComposition:
    """Base recipe scaled by ``multiple``.

    The four-ion subset is not charge balanced; the real recipe carries
    counter-ions that are not modeled.
    """
    if not multiple >= 0:
        raise DomainError(f"multiple must be >= 0, got {multiple}")
    return SolutionComposition(
        {ion: value * multiple for ion, value in base.items()}, temperature
    )
