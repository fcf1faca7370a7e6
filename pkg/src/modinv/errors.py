"""Exception types shared across the package."""


class ModInvError(Exception):
    """Base class for all errors raised by modinv."""


class FieldMismatchError(ModInvError, ValueError):
    """Operands live in different finite fields."""


class CapExceededError(ModInvError, RuntimeError):
    """A configured size cap was exceeded.

    The ``cap`` attribute names the cap so the CLI can report it.
    """

    def __init__(self, cap: str, limit: int, message: str = ""):
        self.cap = cap
        self.limit = limit
        super().__init__(message or f"{cap} cap of {limit} exceeded")


class NotInvariantError(ModInvError, ValueError):
    """A polynomial expected to be invariant is not."""


class BoundViolationError(ModInvError, AssertionError):
    """A proven inequality failed on computed data, which means a bug."""
