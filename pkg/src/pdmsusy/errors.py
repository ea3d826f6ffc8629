"""Exception hierarchy shared by all modules."""


class PDMError(Exception):
    """Base class for errors raised by pdmsusy."""


class DomainError(PDMError, ValueError):
    """An argument lies outside the domain of a formula (e.g. non-positive mass)."""


class SingularityError(DomainError):
    """Evaluation hit a singular point such as u = 0 or r' = 0."""


class NoBoundStateError(DomainError):
    """A requested level does not exist for the potential."""


class IntegrationError(PDMError, ArithmeticError):
    """Adaptive quadrature failed to reach its tolerance."""

    def __init__(self, message: str, achieved: float):
        super().__init__(f"{message} (achieved error estimate {achieved:.3e})")
        self.achieved = achieved


class NumericalFailure(PDMError, ArithmeticError):
    """An iterative solver did not converge."""

    def __init__(self, message: str, residual: float):
        super().__init__(f"{message} (achieved residual {residual:.3e})")
        self.residual = residual


class ConfigError(PDMError, ValueError):
    """Invalid or malformed run configuration."""
