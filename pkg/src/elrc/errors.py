"""Exception types raised across the package."""


class ELRCError(Exception):
    """Base class for all errors raised by this package."""


class InvalidParametersError(ELRCError, ValueError):
    pass


class InvalidCoordinateError(ELRCError, ValueError):
    pass


class NotParityCoordinateError(InvalidCoordinateError):
    """Raised for a coordinate of Z_r^m where a parity coordinate is required."""


class DimensionError(ELRCError, ValueError):
    pass


class FormatError(ELRCError, ValueError):
    """Malformed text in one of the file formats."""


class PlanOrderError(ELRCError):
    """A repair step reads a symbol that is still erased."""


class InconsistentWordError(ELRCError):
    """Repaired word is not a codeword, so the input was not a masked codeword."""


class BudgetExceededError(ELRCError):
    pass
