"""Exception hierarchy shared by every module."""

from typing import Optional


class ISEError(Exception):
    """Base class for toolkit errors."""


class DomainError(ISEError, ValueError):
    """An input violates an operation's precondition."""


class RankError(DomainError):
    """A least-squares design matrix is rank deficient."""


class ConfigError(DomainError):
    """A pipeline config key or value is not accepted by the schema."""


class StateError(ISEError, RuntimeError):
    """An object is used before it has been fitted or configured."""


class ParseError(ISEError):
    """A file could not be parsed."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ModelFormatError(ParseError):
    """A model file is malformed."""


class VersionError(ModelFormatError):
    """A model file declares an unsupported format version."""

    def __init__(self, found: str, expected: str):
        self.found = found
        self.expected = expected
        super().__init__(
            f"unsupported model file version: found {found}, expected {expected}", 1
        )


class ChecksumError(ModelFormatError):
    """A model file's checksum does not match its content."""
