"""Exception hierarchy.

Two families matter to callers: configuration problems (bad input files,
unknown keys) and numerical/domain problems (singular geometry, unresolvable
quadrature, undefined metrics). The CLI maps them to exit codes 1 and 2.
"""


class GhostlightError(Exception):
    """Base class for every error raised by this package."""


class ConfigError(GhostlightError, ValueError):
    """Invalid or inconsistent configuration.

    ``path`` names the offending config key (e.g. ``"source.sigma_g"``) when known.
    """

    def __init__(self, message, path=None):
        self.path = path
        if path:
            message = f"{path}: {message}"
        super().__init__(message)


class NumericalError(GhostlightError, ArithmeticError):
    """A computation cannot produce a trustworthy number."""


class InvalidGeometryError(NumericalError, ValueError):
    pass


class SingularConfigurationError(NumericalError):
    pass


class NotImagingError(NumericalError):
    pass


class InvalidApertureError(NumericalError, ValueError):
    pass


class DegenerateKernelError(NumericalError):
    pass


class QuadraticFormDomainError(NumericalError):
    pass


class AccuracyError(NumericalError):
    pass


class FitError(NumericalError):
    def __init__(self, message, diagnostics=None):
        self.diagnostics = diagnostics or {}
        if self.diagnostics:
            details = ", ".join(f"{k}={v!r}" for k, v in self.diagnostics.items())
            message = f"{message} ({details})"
        super().__init__(message)


class UndefinedMetricError(NumericalError):
    pass


class InsufficientFringesError(NumericalError):
    pass


class BruteResolutionError(NumericalError):
    """The brute-force grids cannot resolve the integrand; the engine refuses."""
