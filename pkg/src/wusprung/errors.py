"""Exception types shared by the numeric modules."""


class DomainError(ValueError):
    """An argument lies outside the domain where the quantity is defined."""


class MultiValuedError(DomainError):
    """``V(x)`` is not a function for this amplitude; use the branch API."""


class ConvergenceError(ArithmeticError):
    """An iterative solver hit its iteration cap."""
