"""Main entry point for the ise-denoise command line."""

import sys
from typing import List, NoReturn, Optional

from ise_denoise.src.pipeline.cli import EXIT_VALIDATION, cli_main
from ise_denoise.src.settings import settings
from ise_denoise.src.settings import validate_config as validate_config_func
from ise_denoise.utils.pylogger import force_reconfigure_all_loggers, get_python_logger

# Initialize logger
logger = get_python_logger()


def validate_config() -> None:
    """Validate process settings before any command runs.

    Raises:
        ValueError: If a setting is invalid.
        RuntimeError: If the settings object is not properly initialized.
    """
    try:
        validate_config_func(settings)
        logger.debug("Configuration validation passed")
    except AttributeError as e:
        raise RuntimeError(
            f"Configuration object is not properly initialized: {e}"
        ) from e
    except Exception as e:
        raise ValueError(f"Configuration validation failed: {e}") from e


def handle_startup_error(error: Exception, context: str = "startup") -> NoReturn:
    """Log an error raised before a command could run and exit.

    Args:
        error: The exception that occurred
        context: Where the error occurred, for the log record

    Raises:
        SystemExit: Always, with exit code 0 for an interrupt and 1 otherwise
    """
    if isinstance(error, KeyboardInterrupt):
        logger.info("Interrupted by user")
        sys.exit(0)
    elif isinstance(error, ValueError):
        logger.critical(f"Configuration error during {context}: {error}")
        sys.exit(EXIT_VALIDATION)
    else:
        logger.critical(f"Unexpected error during {context}: {error}", exc_info=True)
        sys.exit(EXIT_VALIDATION)


def main(argv: Optional[List[str]] = None) -> int:
    """Validate settings, apply the log level and run one subcommand.

    Returns:
        The subcommand's exit code.
    """
    try:
        validate_config()
        force_reconfigure_all_loggers(settings.PYTHON_LOG_LEVEL)
    except Exception as e:
        handle_startup_error(e, "startup")
    return cli_main(argv)


def run() -> None:
    """Console-script entry point."""
    try:
        sys.exit(main())
    except KeyboardInterrupt:
        logger.info("Stopped by user")
        sys.exit(0)


if __name__ == "__main__":
    run()
