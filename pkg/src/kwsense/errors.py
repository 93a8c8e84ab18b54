"""Shared exception types."""


class KwsenseError(Exception):
    """Base class for toolkit-specific failures."""


class ParseError(KwsenseError, ValueError):
    """A data file could not be parsed.

    Messages name the offending file and, where possible, the line number.
    """


class ConfigError(KwsenseError, ValueError):
    """An invalid or incomplete run configuration."""
