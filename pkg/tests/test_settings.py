"""Tests for the settings module."""

import os
from unittest.mock import patch

import pytest

from ise_denoise.src.settings import VALID_LOG_LEVELS, Settings, validate_config


class TestSettings:
    """Test the Settings class."""

    def test_default_settings(self):
        """Test that default settings are correct."""
        # Arrange & Act
        with patch.dict(os.environ, {}, clear=True):
            settings = Settings(_env_file=None)

        # Assert
        assert settings.PYTHON_LOG_LEVEL == "INFO"
        assert settings.ENABLE_TOON_FORMAT is True
        assert settings.ISE_CONFIG is None

    def test_custom_settings_from_env(self):
        """Test that settings can be overridden from environment variables."""
        # Arrange
        env_vars = {
            "PYTHON_LOG_LEVEL": "DEBUG",
            "ENABLE_TOON_FORMAT": "false",
            "ISE_CONFIG": "configs/bench.conf",
        }

        # Act
        with patch.dict(os.environ, env_vars):
            settings = Settings()

        # Assert
        assert settings.PYTHON_LOG_LEVEL == "DEBUG"
        assert settings.ENABLE_TOON_FORMAT is False
        assert settings.ISE_CONFIG == "configs/bench.conf"

    def test_log_level_validation(self):
        """Test log level validation."""
        for level in VALID_LOG_LEVELS:
            with patch.dict(os.environ, {"PYTHON_LOG_LEVEL": level}):
                settings = Settings()
                assert settings.PYTHON_LOG_LEVEL.upper() in VALID_LOG_LEVELS


class TestValidateConfig:
    """Test the validate_config function."""

    def test_valid_config(self):
        """Test validation with valid configuration."""
        # Arrange
        settings = Settings()

        # Act & Assert
        validate_config(settings)

    def test_invalid_log_level(self):
        """Test validation with invalid log level."""
        # Arrange
        settings = Settings()
        settings.PYTHON_LOG_LEVEL = "INVALID"

        # Act & Assert
        with pytest.raises(ValueError, match="PYTHON_LOG_LEVEL must be one of"):
            validate_config(settings)

    def test_lowercase_log_level(self):
        """Test that log levels are case-insensitive."""
        settings = Settings()
        settings.PYTHON_LOG_LEVEL = "debug"
        validate_config(settings)
