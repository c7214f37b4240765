class SchemeError(Exception):
    """Base class for domain errors raised by this package."""


class ColorMatrixError(SchemeError, ValueError):
    pass


class IrrationalSpectrumError(SchemeError):
    pass


class DisconnectedGraphError(SchemeError, ValueError):
    pass


class PreconditionError(SchemeError, ValueError):
    pass


class TheoremFalsified(SchemeError):
    """A proven statement failed on concrete data: an implementation bug."""
