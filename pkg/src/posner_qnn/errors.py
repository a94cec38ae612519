"""Exception hierarchy shared by every module of the package."""


class PosnerError(Exception):
    """Base class for all package errors."""


class RangeError(PosnerError, ValueError):
    """An index, width or angle lies outside its admissible range."""


class InvalidGateError(PosnerError, ValueError):
    """A gate is malformed or its matrix is not unitary."""


class NormalizationError(PosnerError, ValueError):
    """A state or distribution does not sum to one within tolerance."""


class ConfigurationError(PosnerError, ValueError):
    """Widths of cooperating objects do not agree, or a network fails validation."""


class TruthTableError(PosnerError, ValueError):
    """Base class for truth-table parse failures.

    ``line`` is the 1-based line number of the offending line when known.
    """

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class SyntaxTableError(TruthTableError):
    pass


class ShapeError(TruthTableError):
    pass


class BijectivityError(TruthTableError):
    pass


class OrderError(TruthTableError):
    pass


class WiringError(PosnerError, ValueError):
    """A classical unit refers to a source value that is not available."""


class ResourceError(PosnerError, RuntimeError):
    """An exact enumeration would exceed the configured branch cap."""


class UsageError(PosnerError, ValueError):
    """A caller asked for an unsupported mode or format."""
