class DomainError(ValueError):
    """An input violates a documented invariant or lies outside a formula's domain."""


class InfeasibleError(DomainError):
    """The requested machine cannot operate in the requested mode."""


class NumericFailure(ArithmeticError):
    """A computation produced a non-finite value or failed to converge."""
