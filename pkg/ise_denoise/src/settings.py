"""Process settings for the ISE artifact removal toolkit."""

from typing import Optional

from dotenv import load_dotenv
from pydantic import Field
from pydantic_settings import BaseSettings

from ise_denoise.utils.pylogger import get_python_logger

# Initialize logger
logger = get_python_logger()

# Load environment variables with error handling
try:
    load_dotenv()
except Exception as e:
    # Environment variables might be set directly
    logger.warning(f"Could not load .env file: {e}")


VALID_LOG_LEVELS = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]


class Settings(BaseSettings):
    """Process-level settings loaded from the environment.

    Experiment parameters do not live here; they belong to the pipeline config
    file (see ``ise_denoise.src.pipeline.config``).
    """

    PYTHON_LOG_LEVEL: str = Field(
        default="INFO",
        json_schema_extra={
            "env": "PYTHON_LOG_LEVEL",
            "description": "Logging level for the application",
            "example": "INFO",
            "enum": VALID_LOG_LEVELS,
        },
    )
    ENABLE_TOON_FORMAT: bool = Field(
        default=True,
        json_schema_extra={
            "env": "ENABLE_TOON_FORMAT",
            "description": "Print command summaries in TOON format instead of JSON",
            "example": "true",
        },
    )
    ISE_CONFIG: Optional[str] = Field(
        default=None,
        json_schema_extra={
            "env": "ISE_CONFIG",
            "description": "Pipeline config file used when --config is not given",
            "example": "configs/bench.conf",
        },
    )


def validate_config(settings: Settings) -> None:
    """Validate process settings.

    Args:
        settings: Settings instance to validate.

    Raises:
        ValueError: If a value is outside its accepted set.
    """
    if settings.PYTHON_LOG_LEVEL.upper() not in VALID_LOG_LEVELS:
        raise ValueError(
            f"PYTHON_LOG_LEVEL must be one of {VALID_LOG_LEVELS}, got {settings.PYTHON_LOG_LEVEL}"
        )


# Create config instance without validation (validation happens in main.py)
settings = Settings()
