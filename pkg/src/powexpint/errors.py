"""Exception hierarchy shared by all modules."""


class DomainError(ValueError):
    """Arguments fall outside the real domain of a function."""


class PoleError(DomainError):
    """The function has a pole at the requested argument."""


class UnsupportedParameterError(DomainError):
    """Arguments are mathematically valid but beyond the supported range."""


class InadmissibleParametersError(DomainError):
    """(lambda, mu, nu) lies outside the existence region of the integral."""

    def __init__(self, message, bound=None):
        super().__init__(message)
        self.bound = bound


class SideConditionError(ValueError):
    """A reduction formula was called outside its extra side condition."""


class ExistenceError(DomainError):
    """The dynamical-friction integral H does not exist for these parameters."""


class DivergenceError(ArithmeticError):
    """A numerical integral diverges for the requested parameters."""


class QuadratureError(RuntimeError):
    """Adaptive quadrature failed to reach the requested tolerance.

    The best available result is attached as ``result``.
    """

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result
