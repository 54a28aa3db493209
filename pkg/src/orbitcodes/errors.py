"""Shared exception types.

Everything user-facing derives from DomainError so callers (and the CLI) can
catch one type for "the input is wrong" as opposed to "the library is broken".
"""


class DomainError(ValueError):
    """Invalid input or an infeasible request."""


class NonUnitError(DomainError):
    """Division or inversion by a non-unit ring element."""


class SingularMatrixError(DomainError):
    """Inversion of a singular matrix."""


class NoSuchPolynomialError(DomainError):
    """No polynomial with the requested degree/order/primitivity exists."""


class OrbitCapError(DomainError):
    """Orbit enumeration exceeded the configured safety cap."""


class ShapeMismatchError(DomainError):
    """A start subspace does not have the block shape an operation requires."""


class InternalInvariantError(RuntimeError):
    """An internal consistency check failed; indicates a bug, not bad input."""
