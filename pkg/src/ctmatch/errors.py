"""Error types shared across the package.

Input errors cover unreadable or malformed data (CLI exit code 1);
configuration errors cover invalid or incompatible option combinations
(CLI exit code 2).
"""


class InputError(ValueError):
    """Raised when input data (files, sequences, pattern lists) is invalid."""


class ConfigurationError(ValueError):
    """Raised when options are invalid or mutually incompatible."""
