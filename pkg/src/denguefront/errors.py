"""Exception classes shared across the toolkit."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class NoSolutionError(DomainError):
    """The requested quantity has no solution for these parameters."""


class NoFrontError(DomainError):
    """No traveling front exists (growth condition not met)."""


class BracketingError(RuntimeError):
    """Failed to bracket the wave-speed minimum."""


class StiffnessError(RuntimeError):
    """Adaptive ODE step size underflowed; carries the offending state."""

    def __init__(self, message, t=None, state=None):
        super().__init__(message)
        self.t = t
        self.state = state


class DivergenceError(RuntimeError):
    """Trajectory norm exceeded the blow-up threshold."""

    def __init__(self, message, z=None, state=None):
        super().__init__(message)
        self.z = z
        self.state = state


class TruncationError(RuntimeError):
    """A front reached the edge of the computational domain."""


class DegenerateDiffusionError(DomainError):
    """M**p is singular (M = 0 with negative exponent, no floor enabled)."""


class DegenerateProfileError(DomainError):
    """Profile has (u + w)**p = 0 where the wave ODEs divide by it."""


class UnsupportedVariantError(NotImplementedError):
    """The operation is only defined for a specific model variant."""


class AdmissibilityError(ValueError):
    """A symmetry generator is not admitted by the active parameters."""


class ConfigError(ValueError):
    """Malformed configuration input; message carries line/field context."""
