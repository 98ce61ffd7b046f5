"""Pipeline configuration: ``section.key = value`` files plus ``--set`` overrides.

Example::

    # default protocol with a quieter bench
    sim.noise_sd = 0.001
    train.arch = model5
    train.max_epochs = 150

Each section is a pydantic model with ``extra="forbid"``, so a misspelled key
fails before anything runs. ``default`` (or no file at all) gives the built-in
values.
"""

from pathlib import Path
from typing import Dict, Iterable, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from ise_denoise.src.calibrate import CalibConfig
from ise_denoise.src.errors import ConfigError, DomainError
from ise_denoise.src.metrics import EvalConfig
from ise_denoise.src.neuralnet import TrainConfig, parse_architecture, split_architectures
from ise_denoise.src.sim import ProtocolConfig

DEFAULT_CONFIG_NAME = "default"


class PipelineConfig(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    sim: ProtocolConfig = Field(default_factory=ProtocolConfig)
    calib: CalibConfig = Field(default_factory=CalibConfig)
    train: TrainConfig = Field(default_factory=TrainConfig)
    eval: EvalConfig = Field(default_factory=EvalConfig)

    @field_validator("eval")
    @classmethod
    def _known_compare_architectures(cls, value: EvalConfig) -> EvalConfig:
        try:
            for arch in split_architectures(value.compare_arch):
                parse_architecture(arch)
        except DomainError as e:
            raise ValueError(f"compare_arch: {e}") from e
        return value

    def architectures(self) -> List[str]:
        """``train.arch`` followed by every ``eval.compare_arch`` entry not already listed."""
        names = [self.train.arch]
        for arch in split_architectures(self.eval.compare_arch):
            if arch not in names:
                names.append(arch)
        return names


SECTIONS = tuple(PipelineConfig.model_fields)


def parse_assignment(text: str, line: Optional[int] = None) -> Tuple[str, str, str]:
    """Split ``section.key = value`` into its three parts."""
    where = f"line {line}: " if line is not None else ""
    name, sep, value = text.partition("=")
    if not sep:
        raise ConfigError(f"{where}expected 'section.key = value', got {text.strip()!r}")
    section, dot, key = name.strip().partition(".")
    if not dot or not section or not key:
        raise ConfigError(f"{where}expected 'section.key', got {name.strip()!r}")
    if section not in SECTIONS:
        raise ConfigError(
            f"{where}unknown section {section!r}; expected one of {', '.join(SECTIONS)}"
        )
    return section, key.strip(), value.strip()


def parse_config_text(text: str) -> Dict[str, Dict[str, str]]:
    """Raw string values per section; ``#`` starts a comment."""
    values: Dict[str, Dict[str, str]] = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        section, key, value = parse_assignment(line, number)
        if key in values.get(section, {}):
            raise ConfigError(f"line {number}: {section}.{key} is set twice")
        values.setdefault(section, {})[key] = value
    return values


def build_config(values: Dict[str, Dict[str, str]]) -> PipelineConfig:
    try:
        return PipelineConfig.model_validate(values)
    except ValidationError as e:
        problems = "; ".join(
            f"{'.'.join(str(part) for part in error['loc'])}: {error['msg']}"
            for error in e.errors()
        )
        raise ConfigError(f"invalid pipeline config: {problems}") from e


def load_config(
    source: Optional[str | Path] = None, overrides: Iterable[str] = ()
) -> PipelineConfig:
    """Config from ``source`` (a path, ``default`` or None) with overrides applied last."""
    values: Dict[str, Dict[str, str]] = {}
    if source is not None and str(source) != DEFAULT_CONFIG_NAME:
        values = parse_config_text(Path(source).read_text(encoding="utf-8"))
    for override in overrides:
        section, key, value = parse_assignment(override)
        values.setdefault(section, {})[key] = value
    return build_config(values)


def render_config(config: PipelineConfig) -> str:
    """Every key of ``config`` in the file format, sections in schema order."""
    lines = []
    for section in SECTIONS:
        for key, value in getattr(config, section).model_dump(mode="json").items():
            if isinstance(value, bool):
                value = str(value).lower()
            lines.append(f"{section}.{key} = {value}")
    return "\n".join(lines) + "\n"
