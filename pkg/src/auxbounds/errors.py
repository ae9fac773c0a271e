"""Shared exception types."""


class InvariantError(RuntimeError):
    """An internal consistency check failed (CLI exit code 3).

    Raised when a quantity the library relies on (monotone bisection
    bracket, contiguous state window) is observed to be violated.
    Domain errors on user input raise plain ValueError instead.
    """
