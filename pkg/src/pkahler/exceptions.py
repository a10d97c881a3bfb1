"""Exception types raised across the package."""


class DomainError(ValueError):
    """Input outside the domain of an operation (y <= 0, t < 0, s > 0, ...)."""


class DivergenceError(ArithmeticError):
    """An iterative solver failed to bracket or converge."""


class QuadratureError(ArithmeticError):
    """Adaptive quadrature exceeded its recursion budget."""


class OffFibrationError(DomainError):
    """Point lies on the zero section w = 0, where H is not a submersion."""


class DomainExitError(DomainError):
    """A numerical trajectory left the upper half-space y > 0."""

    def __init__(self, message, exit_time):
        super().__init__(message)
        self.exit_time = exit_time


class NotCanonicalIsometryError(ValueError):
    """A black-box map does not agree with any P o e^{i theta} o flips."""
