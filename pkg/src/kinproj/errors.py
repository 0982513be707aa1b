"""Shared exception types."""


class ConfigurationError(ValueError):
    """Invalid grid, plan, scenario, or CLI configuration."""


class InfeasiblePlanError(ConfigurationError):
    """Step-size layout cannot be realized (e.g. negative M)."""


class StepRejectionError(RuntimeError):
    """A time step produced non-finite data.

    Carries the flat index of the first offending entry in ``index``.
    """

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class DiagnosticError(RuntimeError):
    """A self-check inside a diagnostic routine failed (e.g. basis Gram test)."""
