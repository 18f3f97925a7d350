"""Exception types shared across the package."""


class InvalidStateError(ValueError):
    """Raised for malformed or otherwise unusable state input."""


class InvalidOperatorError(ValueError):
    """Raised when a local operator fails its invertibility or kind checks."""


class ConsistencyError(RuntimeError):
    """Raised when two computation paths that must agree do not.

    This always signals an implementation bug or severe numerical
    pathology, never a property of the input state.
    """
