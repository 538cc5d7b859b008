"""Error types shared across the package.

Each failure mode the library promises to distinguish gets its own class so
callers (and the CLI exit-status mapping) can tell them apart.
"""


class MultisepError(Exception):
    """Base class for all package errors."""


class ParameterError(MultisepError, ValueError):
    """A parameter is outside its documented range."""


class DimensionMismatch(MultisepError, ValueError):
    """Two objects that must share a universe size do not."""


class BudgetExceeded(MultisepError, RuntimeError):
    """An exhaustive check or enumeration would exceed the configured budget.

    Verifiers raise this instead of silently returning; a refusal is never a
    'pass'.
    """


class FormatError(MultisepError, ValueError):
    """A text artifact (graph, set family, family file, ...) failed to parse."""

    def __init__(self, message, line=None):
        if line is not None:
            message = "line %d: %s" % (line, message)
        super().__init__(message)
        self.line = line


class CircuitError(FormatError):
    """An arithmetic-circuit description is malformed.

    `code` names the specific violation: 'syntax', 'undefined', 'duplicate',
    'constant', 'subtraction', 'fanin', 'output', 'variable'.
    """

    def __init__(self, message, line=None, code="syntax"):
        super().__init__(message, line)
        self.code = code
