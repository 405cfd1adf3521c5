"""Exception types shared across the package."""


class DomainError(ValueError):
    """An input lies outside the domain an operation is defined on."""


class ConvergenceError(ArithmeticError):
    """A numerical procedure failed to reach its stated accuracy."""
