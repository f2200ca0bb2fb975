"""Exception types shared across the package."""


class ParameterError(ValueError):
    """Invalid or inconsistent physical parameters."""


class InsufficientParametersError(ParameterError):
    """A length-scale output was requested but only the combined interaction
    strength is known."""


class ContractViolationError(ValueError):
    """An operation was called outside its stated domain (e.g. the
    on-resonance integrals with a nonzero decoherence rate)."""


class NonConvergenceError(RuntimeError):
    """Adaptive quadrature did not reach the requested tolerance.

    Carries the best estimate so callers can keep the partial result.
    """

    def __init__(self, message, best=None, error=None, partial=None):
        super().__init__(message)
        self.best = best
        self.error = error
        self.partial = partial


class PeakNotBracketedError(ValueError):
    """The spectrum maximum sits on the grid boundary."""


class UnidentifiableFitError(ValueError):
    """The calibration data cannot constrain the fit parameter."""
