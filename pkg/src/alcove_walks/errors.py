"""Exception types raised by the counting engine."""


class WalkError(Exception):
    """Base class for all errors raised by alcove_walks."""


class PreconditionError(WalkError, ValueError):
    """Input violates an operation's precondition (dimension, interior, lattice)."""


class NotReflectableError(PreconditionError):
    """The walk-type is not reflectable, so the signed sum does not count walks."""

    def __init__(self, reason):
        super().__init__(f"walk is not reflectable: {reason}")
        self.reason = reason


class UnsupportedFamilyError(PreconditionError):
    """Root system outside the classical families handled here."""


class ResourceError(WalkError, RuntimeError):
    """A brute-force computation would exceed its configured cap."""


class ConsistencyError(WalkError, ArithmeticError):
    """A floating-point closed form failed an internal sanity check."""
