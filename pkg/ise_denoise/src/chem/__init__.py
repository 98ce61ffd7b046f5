"""Ions, solution states and the electrochemical forward equations."""

from ise_denoise.src.chem.electrode import (
    ElectrodeSpec,
    ExponentConvention,
    calibration_forward,
    default_selectivity,
    nikolsky_eisenman,
)
from ise_denoise.src.chem.ions import (
    AMMONIUM,
    CALCIUM,
    CANONICAL_ORDER,
    DEFAULT_CONSTANTS,
    NITRATE,
    POTASSIUM,
    IonRegistry,
    IonSpecies,
    PhysicalConstants,
    default_registry,
)
from ise_denoise.src.chem.solution import (
    IDEAL_SOLUTION,
    STANDARD_TEMPERATURE,
    YAMAZAKI_BASE,
    ActivityModel,
    ChemicalPotentialSpec,
    SolutionComposition,
    activity,
    activity_from_potential,
    dilution_multiple,
    nernst_slope,
    yamazaki_composition,
)

__all__ = [
    "AMMONIUM",
    "CALCIUM",
    "CANONICAL_ORDER",
    "DEFAULT_CONSTANTS",
    "IDEAL_SOLUTION",
    "NITRATE",
    "POTASSIUM",
    "STANDARD_TEMPERATURE",
    "YAMAZAKI_BASE",
    "ActivityModel",
    "ChemicalPotentialSpec",
    "ElectrodeSpec",
    "ExponentConvention",
    "IonRegistry",
    "IonSpecies",
    "PhysicalConstants",
    "SolutionComposition",
    "activity",
    "activity_from_potential",
    "calibration_forward",
    "default_registry",
    "default_selectivity",
    "dilution_multiple",
    "nernst_slope",
    "nikolsky_eisenman",
    "yamazaki_composition",
]
