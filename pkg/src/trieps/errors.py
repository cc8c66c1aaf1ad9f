"""Exception types shared across the package."""


class TriepsError(Exception):
    """Base class for all package errors."""


class ValidationError(TriepsError):
    """Input parameters violate a documented invariant."""


class PreconditionError(TriepsError):
    """Operation called on parameters outside its domain of validity."""


class InfeasibleError(TriepsError):
    """Constraint solving has no real solution for the given inputs.

    Carries the (negative) radicand so callers can report how far from
    feasibility the inputs are.
    """

    def __init__(self, message, radicand=None):
        super().__init__(message)
        self.radicand = radicand


class UnknownAxisError(TriepsError):
    """Sweep or search requested over a parameter name that does not exist."""


class NonConvergenceError(TriepsError):
    """Iterative eigensolver failed to converge within its budget."""


class NoRootError(TriepsError):
    """Root search found no solution inside the admissible domain."""
