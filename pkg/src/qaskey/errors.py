"""Exception hierarchy shared by every module of the package."""


class QAskeyError(Exception):
    """Base class for all errors raised by :mod:`qaskey`."""


class InvalidParams(QAskeyError, ValueError):
    """Parameters violate an admissibility bound or a family's requirements."""


class DomainError(QAskeyError, ValueError):
    """A point lies outside the open interval where a weight is defined."""


class NumericalError(QAskeyError, ArithmeticError):
    """A computed quantity failed a sanity check (non-real, non-positive, ...)."""


class NonConvergence(NumericalError):
    """An infinite q-product did not reach its truncation bound."""


class DivisionByZero(NumericalError, ZeroDivisionError):
    """A denominator factor of a terminating series vanished."""


class BudgetExceeded(QAskeyError, RuntimeError):
    """A tensor quadrature grid would exceed the configured node budget."""
