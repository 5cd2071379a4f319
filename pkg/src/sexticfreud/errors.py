"""Exception types shared across the package."""


class ContextMismatchError(ValueError):
    """Operands were built on different precision contexts."""


class QuadratureError(ArithmeticError):
    """Double-exponential quadrature failed to converge.

    Carries the last two level estimates in ``estimates`` so callers can
    judge how far apart they are.
    """

    def __init__(self, message, estimates=None):
        super().__init__(message)
        self.estimates = estimates


class PrecisionExhaustedError(ArithmeticError):
    """Working precision was insufficient for the requested computation.

    ``suggested_guard_digits`` advises a guard-digit count for the retry.
    """

    def __init__(self, message, suggested_guard_digits=None):
        super().__init__(message)
        self.suggested_guard_digits = suggested_guard_digits
