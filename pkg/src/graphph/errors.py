"""Exception hierarchy shared across the package."""


class GraphPHError(Exception):
    """Base class for all package errors."""


class ValidationError(GraphPHError, ValueError):
    """Bad argument or violated precondition."""


class InputError(GraphPHError, OSError):
    """Required input file is missing or unreadable."""


class FormatError(GraphPHError, ValueError):
    """Input file exists but its contents are malformed."""


class ComputationError(GraphPHError, ArithmeticError):
    """A numerical routine failed."""
