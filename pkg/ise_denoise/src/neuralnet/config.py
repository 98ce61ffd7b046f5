"""Training hyperparameters and the network architectures.

``TrainConfig`` is the ``train.*`` section of the pipeline config.
"""

from typing import Dict, List, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator

from ise_denoise.src.errors import DomainError

ARCHITECTURES: Dict[str, Tuple[int, ...]] = {
    "model1": (128, 128, 128, 4),
    "model2": (128, 128, 128, 128, 4),
    "model3": (256, 256, 128, 64, 4),
    "model4": (256, 256, 256, 128, 4),
    "model5": (256, 256, 256, 256, 4),
}
SUGGESTED_ARCHITECTURE = "model5"


def parse_architecture(text: str, output_dim: int = 4) -> Tuple[int, ...]:
    """Layer widths from a preset name or comma-separated widths ending in ``output_dim``."""
    text = text.strip()
    if text in ARCHITECTURES:
        widths = ARCHITECTURES[text]
    else:
        try:
            widths = tuple(int(part) for part in text.split(",") if part.strip())
        except ValueError:
            raise DomainError(
                f"architecture must be a preset ({', '.join(ARCHITECTURES)}) or widths like 256,256,4; got {text!r}"
            ) from None
    if not widths or any(width < 1 for width in widths):
        raise DomainError(f"architecture widths must be positive, got {text!r}")
    if widths[-1] != output_dim:
        raise DomainError(
            f"architecture must end in the output width {output_dim}, got {widths[-1]}"
        )
    return widths


def split_architectures(text: str) -> List[str]:
    """Architectures named by a comma list of presets, in order and without repeats.

    A value that is not made only of preset names is a single width list, so
    ``model1,model3`` names two networks and ``64,64,4`` names one.
    """
    items = [part.strip() for part in text.split(",") if part.strip()]
    if items and all(item in ARCHITECTURES for item in items):
        return list(dict.fromkeys(items))
    return [text.strip()] if items else []


class TrainConfig(BaseModel):
    """Optimizer, schedule, stopping and dataset-split parameters."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    arch: str = Field(default=SUGGESTED_ARCHITECTURE)
    lr0: float = Field(default=1e-4, gt=0)
    decay: float = Field(default=1e-7, ge=0, description="per epoch")
    batch_size: int = Field(default=64, ge=1)
    max_epochs: int = Field(default=200, ge=0)
    patience: int = Field(default=20, ge=1, description="epochs without test improvement")
    beta1: float = Field(default=0.9, gt=0, lt=1)
    beta2: float = Field(default=0.999, gt=0, lt=1)
    eps_adam: float = Field(default=1e-8, gt=0)
    eps_mape: float = Field(default=1e-7, ge=0, description="normalized units")
    bn_momentum: float = Field(default=0.99, gt=0, lt=1)
    seed: int = Field(default=42, ge=0, lt=2**64)
    window: int = Field(default=1, ge=1, description="ticks of voltage history per input")
    test_fraction: float = Field(default=0.2, gt=0, lt=1)
    split_seed: int = Field(default=42, ge=0, lt=2**64)
    stable_only: bool = False
    log_every: int = Field(default=10, ge=1, description="epochs between info logs")

    @field_validator("arch")
    @classmethod
    def _known_architecture(cls, value: str) -> str:
        try:
            parse_architecture(value)
        except DomainError as e:
            raise ValueError(str(e)) from e
        return value

    @property
    def widths(self) -> Tuple[int, ...]:
        return parse_architecture(self.arch)
