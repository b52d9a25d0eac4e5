class InvalidInputError(ValueError):
    """Raised when arguments are malformed or incompatible with each other."""


class InvalidStateError(RuntimeError):
    """Raised when an operation needs a graph or state it cannot trust."""
