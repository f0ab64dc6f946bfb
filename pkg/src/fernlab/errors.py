"""Exception hierarchy shared by every fernlab module."""


class FernlabError(Exception):
    """Base class for all library errors."""


class InvalidComplex(FernlabError):
    """A chain complex whose composite boundaries are not zero."""


class DimensionMismatch(FernlabError):
    """Matrices that cannot be composed or compared."""


class IndexOutOfRange(FernlabError):
    pass


class DimensionOverflow(FernlabError):
    """The cone operator was asked to leave the top dimension of the complex."""


class BudgetExceeded(FernlabError):
    """An enumeration would exceed the configured size budget."""


class ModelInconsistency(FernlabError):
    """An internal consistency assertion of the cohomology model failed.

    This signals a bug in the implementation, never a mathematical outcome.
    """
