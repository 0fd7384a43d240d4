"""Exception types shared across the package."""


class PwsysError(Exception):
    """Base class for all library errors."""


class DivisionByZero(PwsysError, ZeroDivisionError):
    pass


class SingularSubstitution(PwsysError):
    """A substitution produced an identically zero denominator."""


class NearSingularEvaluation(PwsysError):
    """A denominator evaluated numerically to (almost) zero."""


class UnknownSystem(PwsysError, KeyError):
    pass


class ConfigurationError(PwsysError):
    pass


class DegreeBudgetExceeded(PwsysError):
    """Expression swell beyond the configured degree budget."""


class ParseError(PwsysError, ValueError):
    pass


class PoleEncountered(PwsysError):
    def __init__(self, t, state):
        super().__init__(f"pole encountered near t={t}")
        self.t = t
        self.state = state


class StepUnderflow(PwsysError):
    def __init__(self, t, h):
        super().__init__(f"step size {h} underflowed at t={t}")
        self.t = t
        self.h = h
