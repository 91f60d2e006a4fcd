"""Exception types shared across the package."""


class FusionSeqError(Exception):
    """Base class for errors raised by this package."""


class InvalidDataError(FusionSeqError):
    """Raised when an operation receives structurally invalid input.

    Carries the validation report when one is available.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class ParseError(FusionSeqError):
    """Raised when a data file cannot be parsed or is missing required
    schema structure (as opposed to being mathematically invalid)."""


class PrecisionError(FusionSeqError):
    """Raised when a certified computation cannot reach the requested
    tolerance within its iteration budget."""


class SpectrumSplitError(FusionSeqError):
    """Raised when the character-table computation fails to split the
    class-matrix spectrum after exhausting its prime retries."""


class CrossCheckError(FusionSeqError):
    """Raised when two independently certified criteria that must agree
    disagree.  This always indicates a bug, never bad input."""
