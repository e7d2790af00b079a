"""Exception hierarchy shared by every module of the package."""


class WhittakerError(Exception):
    """Base class for all evaluation failures raised by this package."""


class DomainError(WhittakerError, ValueError):
    """Argument outside the supported domain (e.g. |mu| below MU_MIN)."""


class PoleError(WhittakerError, ValueError):
    """Gamma function evaluated at (or numerically on top of) a pole."""


class ParameterPole(PoleError):
    """Lower 1F1 parameter sits on a nonpositive integer."""


class LossOfPrecision(WhittakerError, ArithmeticError):
    """Cancellation in a series destroyed more digits than allowed."""


class DivergenceError(WhittakerError, ArithmeticError):
    """Asymptotic series is useless at this argument (first correction too big)."""


class AccuracyUnachievable(WhittakerError, ArithmeticError):
    """No evaluation regime reaches the required accuracy."""


class DegenerateOrders(WhittakerError, ValueError):
    """mu**2 - mu'**2 too small to divide by."""


class OverflowRisk(WhittakerError, ValueError):
    """Spectral support extends past the sinh(2 pi mu) overflow envelope."""


class NonConvergence(WhittakerError, ArithmeticError):
    """Quadrature exhausted its evaluation budget.

    The best estimate is attached as ``result`` so callers may still use it.
    """

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result
