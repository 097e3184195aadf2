"""Exception hierarchy shared by every weilform module."""


class WeilformError(Exception):
    """Base class for all library errors."""


class InputError(WeilformError, ValueError):
    """Malformed or precondition-violating input."""


class PurityError(WeilformError):
    """A module or polynomial is not pure of the requested weight."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness or []


class NonIntegralWeight(WeilformError):
    """An eigenvalue modulus is not q^(w/2) for any integer w."""

    def __init__(self, message, box=None):
        super().__init__(message)
        self.box = box


class RepresentationError(WeilformError):
    """Representation matrices are inconsistent with the group."""


class InvariantViolation(WeilformError, AssertionError):
    """Two independent computations disagreed; this indicates a bug."""
