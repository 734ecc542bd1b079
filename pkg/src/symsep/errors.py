"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of an operation."""


class StructuralError(DomainError):
    """A graph or complex is malformed (bad rotation system, runaway trip, ...)."""


class BudgetError(RuntimeError):
    """An enumeration would exceed its configured budget."""
