"""The ``eval.*`` section of the pipeline config."""

from pydantic import BaseModel, ConfigDict, Field

from ise_denoise.src.metrics.distribution import DEFAULT_TAIL_THRESHOLD


class EvalConfig(BaseModel):
    """Evaluation parameters."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    bins: int = Field(default=20, ge=1)
    tail_threshold: float = Field(default=DEFAULT_TAIL_THRESHOLD, gt=0, description="%")
    compare_arch: str = Field(
        default="model1",
        description=(
            "Comma list of presets (or one width list) trained next to `train.arch` "
            "by `reproduce`; empty to skip"
        ),
    )
