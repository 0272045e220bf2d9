class OmegaWordsError(ValueError):
    """Base class for domain errors raised by this package."""


class OrdinalSyntaxError(OmegaWordsError):
    pass


class OrderError(OmegaWordsError):
    """An ordering precondition (``w < u``, increasing input, ...) was violated."""


class BudgetExceeded(OmegaWordsError):
    """An enumeration cap or ordinal budget was exhausted."""
