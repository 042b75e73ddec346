"""Exception types raised across the package."""


class ParameterError(ValueError):
    """An argument violates a documented precondition."""


class StepSizeError(ParameterError):
    """The step size is not below the admissible bound."""


class OracleError(RuntimeError):
    """A proximal oracle could not produce a minimizer."""


class NumericalError(ArithmeticError):
    """A non-finite value appeared during an iteration."""


class FormatError(ValueError):
    """Malformed image file."""
