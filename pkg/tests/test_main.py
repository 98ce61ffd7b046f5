"""Tests for the main module."""

from unittest.mock import patch

import pytest

from ise_denoise.src.main import handle_startup_error, main, run, validate_config


class TestValidateConfig:
    """Test the validate_config function."""

    @patch("ise_denoise.src.main.validate_config_func")
    @patch("ise_denoise.src.main.logger")
    def test_validate_config_success(self, mock_logger, mock_validate_func):
        """Test successful configuration validation."""
        # Act
        validate_config()

        # Assert
        mock_validate_func.assert_called_once()
        mock_logger.debug.assert_called_with("Configuration validation passed")

    @patch("ise_denoise.src.main.validate_config_func")
    @patch("ise_denoise.src.main.logger")
    def test_validate_config_validation_error(self, mock_logger, mock_validate_func):
        """Test validation error handling."""
        # Arrange
        mock_validate_func.side_effect = ValueError("Test validation error")

        # Act & Assert
        with pytest.raises(ValueError, match="Configuration validation failed"):
            validate_config()

    @patch("ise_denoise.src.main.validate_config_func")
    @patch("ise_denoise.src.main.logger")
    def test_validate_config_attribute_error(self, mock_logger, mock_validate_func):
        """Test attribute error handling."""
        # Arrange
        mock_validate_func.side_effect = AttributeError("Test attribute error")

        # Act & Assert
        with pytest.raises(
            RuntimeError, match="Configuration object is not properly initialized"
        ):
            validate_config()


class TestHandleStartupError:
    """Test the handle_startup_error function."""

    @patch("ise_denoise.src.main.logger")
    @patch("ise_denoise.src.main.sys")
    def test_handle_startup_error_value_error(self, mock_sys, mock_logger):
        """Test handling of ValueError."""
        # Arrange
        error = ValueError("Test value error")

        # Act
        handle_startup_error(error, "test context")

        # Assert
        mock_logger.critical.assert_called_with(
            "Configuration error during test context: Test value error"
        )
        mock_sys.exit.assert_called_with(1)

    @patch("ise_denoise.src.main.logger")
    @patch("ise_denoise.src.main.sys")
    def test_handle_startup_error_keyboard_interrupt(self, mock_sys, mock_logger):
        """Test handling of KeyboardInterrupt."""
        # Act
        handle_startup_error(KeyboardInterrupt(), "test context")

        # Assert
        mock_logger.info.assert_called_with("Interrupted by user")
        mock_sys.exit.assert_called_with(0)

    @patch("ise_denoise.src.main.logger")
    @patch("ise_denoise.src.main.sys")
    def test_handle_startup_error_generic_error(self, mock_sys, mock_logger):
        """Test handling of generic exceptions."""
        # Arrange
        error = Exception("Test generic error")

        # Act
        handle_startup_error(error, "test context")

        # Assert
        mock_logger.critical.assert_called_with(
            "Unexpected error during test context: Test generic error", exc_info=True
        )
        mock_sys.exit.assert_called_with(1)

    def test_handle_startup_error_exits(self):
        """Test that the process really exits."""
        with pytest.raises(SystemExit) as excinfo:
            handle_startup_error(ValueError("bad"))
        assert excinfo.value.code == 1


class TestMain:
    """Test the main function."""

    @patch("ise_denoise.src.main.cli_main")
    @patch("ise_denoise.src.main.force_reconfigure_all_loggers")
    @patch("ise_denoise.src.main.validate_config")
    def test_main_success(self, mock_validate, mock_reconfigure, mock_cli_main):
        """Test a successful run."""
        # Arrange
        mock_cli_main.return_value = 0

        # Act
        code = main(["report", "--inputs", "a.txt", "--out", "b.csv"])

        # Assert
        assert code == 0
        mock_validate.assert_called_once()
        mock_reconfigure.assert_called_once()
        mock_cli_main.assert_called_once_with(["report", "--inputs", "a.txt", "--out", "b.csv"])

    @patch("ise_denoise.src.main.cli_main")
    @patch("ise_denoise.src.main.handle_startup_error")
    @patch("ise_denoise.src.main.validate_config")
    def test_main_config_error(self, mock_validate, mock_handle_error, mock_cli_main):
        """Test that settings errors are handled before any command runs."""
        # Arrange
        error = ValueError("Config error")
        mock_validate.side_effect = error
        mock_handle_error.side_effect = SystemExit(1)

        # Act & Assert
        with pytest.raises(SystemExit):
            main([])
        mock_handle_error.assert_called_once_with(error, "startup")
        mock_cli_main.assert_not_called()

    @patch("ise_denoise.src.main.cli_main")
    @patch("ise_denoise.src.main.validate_config")
    def test_main_passes_exit_code(self, mock_validate, mock_cli_main):
        """Test that the command's exit code is returned."""
        mock_cli_main.return_value = 2
        assert main(["eval"]) == 2


class TestRun:
    """Test the console-script entry point."""

    @patch("ise_denoise.src.main.main")
    def test_run_exits_with_code(self, mock_main):
        """Test that run exits with main's code."""
        # Arrange
        mock_main.return_value = 2

        # Act & Assert
        with pytest.raises(SystemExit) as excinfo:
            run()
        assert excinfo.value.code == 2

    @patch("ise_denoise.src.main.logger")
    @patch("ise_denoise.src.main.main")
    def test_run_keyboard_interrupt(self, mock_main, mock_logger):
        """Test Ctrl-C during a command."""
        # Arrange
        mock_main.side_effect = KeyboardInterrupt()

        # Act & Assert
        with pytest.raises(SystemExit) as excinfo:
            run()
        assert excinfo.value.code == 0
        mock_logger.info.assert_called_with("Stopped by user")
