"""Exception types shared across the package."""


class WmodkError(Exception):
    """Base class for all package errors."""


class StructuralError(WmodkError, ValueError):
    """Input has the wrong shape, is not symmetric, or dimensions disagree."""


class InvalidLabelError(WmodkError, ValueError):
    def __init__(self, index, value, K):
        self.index = index
        self.value = value
        self.K = K
        super().__init__(f"label at index {index} is {value!r}, expected an integer in [1, {K}]")


class ConfigError(WmodkError, ValueError):
    """Model or experiment parameters are invalid."""


class InfeasibleOmegaError(ConfigError):
    """The expectation matrix cannot be sampled under the requested family."""

    def __init__(self, report):
        self.report = report
        super().__init__(f"expectation matrix infeasible for {report.subject}: " + "; ".join(report.violations))


class ParseError(WmodkError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DataError(WmodkError, ValueError):
    """Parsed data is well-formed but inconsistent (e.g. conflicting edge weights)."""
