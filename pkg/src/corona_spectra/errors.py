"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class CoronaSpectraError(Exception):
    """Base class for every error raised by this package."""


class GraphValidationError(CoronaSpectraError, ValueError):
    """Raw input does not describe a simple undirected graph."""


class InvalidParameterError(CoronaSpectraError, ValueError):
    pass


class PreconditionError(CoronaSpectraError, ValueError):
    """An operation was called on input outside its domain."""


class ClosedFormInapplicableError(PreconditionError):
    """Operands do not satisfy the hypotheses of the closed-form spectra."""


class BlockAssemblyError(PreconditionError):
    pass


class UndefinedMatrixError(CoronaSpectraError, ValueError):
    """The normalized Laplacian is undefined (isolated and non-isolated vertices mixed)."""


class PoleError(CoronaSpectraError, ZeroDivisionError):
    pass


class NonRealRootError(CoronaSpectraError, ArithmeticError):
    """A polynomial expected to be real-rooted produced a complex root."""


class ConsistencyError(CoronaSpectraError):
    """Closed form and oracle disagree beyond tolerance."""
