"""Exception hierarchy. Each class carries the CLI exit status it maps to."""


class AcsError(Exception):
    exit_code = 1


class DomainError(AcsError, ValueError):
    """Arguments outside the mathematical domain of an operation."""

    exit_code = 2


class NotNormalizableError(DomainError):
    """Eigenproblem parameters for which no normalizable eigenstate exists."""

    def __init__(self, message, violated=()):
        super().__init__(message)
        self.violated = tuple(violated)


class TruncationError(AcsError, RuntimeError):
    """The truncated ladder basis is too small to certify the state."""

    exit_code = 3

    def __init__(self, message, tail_norm=None, dimension=None):
        super().__init__(message)
        self.tail_norm = tail_norm
        self.dimension = dimension


class SeriesConvergenceError(AcsError, ArithmeticError):
    """A power series did not meet its tolerance within the term budget."""

    def __init__(self, message, partial_value, terms):
        super().__init__(message)
        self.partial_value = partial_value
        self.terms = terms
