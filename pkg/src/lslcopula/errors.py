"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain an operation is defined on."""


class AccuracyError(ArithmeticError):
    """Adaptive quadrature failed to reach the requested tolerance.

    The best available estimate and its error bound are kept so callers can
    decide whether the result is still usable.
    """

    def __init__(self, message, estimate, error):
        super().__init__(message)
        self.estimate = estimate
        self.error = error
