"""Exception hierarchy shared by every module.

The three top-level families map onto CLI exit codes: configuration
problems exit with 2, data problems with 3 and everything else with 4.
"""


class MIMLError(Exception):
    """Base class for all library errors."""


class ConfigError(MIMLError):
    """Problem with an experiment configuration or a component spec."""


class DataError(MIMLError):
    """Problem with input data files or dataset contents."""


class DataSyntaxError(DataError):
    """Malformed ARFF or sidecar XML text; carries the 1-based line and column."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            loc = f"line {line}" + (f", column {column}" if column is not None else "")
            message = f"{loc}: {message}"
        super().__init__(message)


class SchemaError(DataError):
    pass


class ConfigSyntaxError(ConfigError):
    pass


class MissingBranch(ConfigError):
    pass


class DuplicateBranch(ConfigError):
    pass


class UnknownAlgorithm(ConfigError):
    pass


class BadParameter(ConfigError):
    pass


class UnknownMeasure(ConfigError):
    pass


class DimensionMismatch(MIMLError, ValueError):
    pass


class MissingRanges(MIMLError, ValueError):
    pass


class InvalidK(MIMLError, ValueError):
    pass


class InvalidFraction(MIMLError, ValueError):
    pass


class LengthMismatch(MIMLError, ValueError):
    pass
