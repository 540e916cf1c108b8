"""Exception and warning types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the set on which the quantity is defined."""


class NumericError(ArithmeticError):
    """An iteration failed to converge or a forward check did not pass."""


class DegenerateGeometryError(DomainError):
    """A segment/circle configuration has no well-defined crossing."""


class UncertifiedDistanceWarning(RuntimeWarning):
    """An orbit minimum was returned without an exclusion certificate."""
