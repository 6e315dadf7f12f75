"""Exception types shared across the package."""


class InputError(ValueError):
    """Malformed or out-of-range arguments."""


class CapacityError(RuntimeError):
    """An enumeration would exceed its configured cap.

    ``reason`` is a short machine-readable tag used in verification reports.
    """

    def __init__(self, message, reason="capacity"):
        super().__init__(message)
        self.reason = reason


class InconsistencyError(ArithmeticError):
    """Two computations that must agree did not."""
