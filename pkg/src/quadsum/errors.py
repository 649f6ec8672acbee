"""Exception types shared across the package."""


class ValidationError(ValueError):
    """A parameter or argument violates a documented constraint."""


class NumericalError(RuntimeError):
    """A computation failed or produced values outside its guarantees."""
