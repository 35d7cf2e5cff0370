"""Error types shared across the package."""


class AccuracyError(RuntimeError):
    """A refinement budget ran out before the requested tolerance was met.

    Carries the best estimate obtained and the tolerance actually achieved,
    so callers can still report a (degraded) value.
    """

    def __init__(self, message, best_estimate, achieved_tol):
        super().__init__(message)
        self.best_estimate = best_estimate
        self.achieved_tol = achieved_tol


class DivergenceError(RuntimeError):
    """An integral or sum failed to converge within the allowed window."""
