"""Exception hierarchy shared across the package.

The CLI maps these onto exit codes: data/validation problems exit 1,
I/O problems (missing files, unreadable paths) exit 2.
"""


class TsprobeError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(TsprobeError):
    """Input violates a documented invariant (bad values, bad shapes)."""


class ParseError(ValidationError):
    """A data file has syntactically invalid content; names the location."""


class ConfigError(ValidationError):
    """A configuration object holds an unusable parameter combination."""


class ParameterError(ValidationError):
    """A transformation or operation parameter is out of its legal range."""
