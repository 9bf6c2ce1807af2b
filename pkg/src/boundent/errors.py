"""Exception types shared across the package."""


class BoundentError(Exception):
    """Base class for all errors raised by boundent."""


class ValidationError(BoundentError, ValueError):
    """A matrix or state fails its structural invariants."""


class ParameterError(BoundentError, ValueError):
    """A family or algorithm parameter is out of range."""


class CapacityError(BoundentError):
    """A requested composite dimension exceeds the configured cap."""


class NullOutcomeError(BoundentError):
    """A local operation annihilates the state (norm below threshold)."""


class NotDistillableByProtocol(BoundentError):
    """The recurrence protocol cannot start: fidelity stays at or below 1/2.

    This is a statement about the protocol only, never a proof that the
    state is undistillable.
    """
