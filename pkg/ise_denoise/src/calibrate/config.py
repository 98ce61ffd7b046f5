"""The ``calib.*`` section of the pipeline config."""

from pydantic import BaseModel, ConfigDict, Field

from ise_denoise.src.calibrate.quadratic import DEFAULT_RIDGE
from ise_denoise.src.metrics.scores import CONCENTRATION_FLOOR


class CalibConfig(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    floor: float = Field(default=CONCENTRATION_FLOOR, gt=0, description="mmol/L")
    stable_only: bool = False
    ridge: float = Field(default=DEFAULT_RIDGE, ge=0)
