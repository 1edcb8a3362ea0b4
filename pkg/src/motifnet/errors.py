"""Exception types shared across the package."""


class MotifnetError(Exception):
    """Base class for all motifnet errors."""


class ConfigurationError(MotifnetError):
    """Invalid configuration or an incompatible option combination."""


class DataFormatError(MotifnetError):
    """Malformed, unreadable, or inconsistent input data."""


class EvaluationError(MotifnetError):
    """An evaluation metric is undefined for the given inputs."""


class SolverError(MotifnetError):
    """A numerical solver failed."""


class ConvergenceError(SolverError):
    """Iteration budget exhausted before reaching the requested tolerance."""

    def __init__(self, message: str, iterations: int, residual: float):
        super().__init__(message)
        self.iterations = iterations
        self.residual = residual
