"""
Numerical error types raised by the engine model and solvers
"""


class EngineError(Exception):
    """Base class for numerical failures"""
    pass


class DomainError(EngineError, ValueError):
    """Argument outside the mathematical domain of a formula"""
    pass


class VariantError(EngineError):
    """Operation not defined for the requested engine variant"""
    pass


class SolverError(EngineError):
    """Linear solve did not meet its residual target"""
    pass


class SingularSystemError(SolverError):
    """Harmonic system is rank deficient"""

    def __init__(self, message: str, zero_mode: str | None = None):
        super().__init__(message)
        self.zero_mode = zero_mode


class DegenerateInputError(EngineError):
    """Closed-form expression hit a vanishing denominator"""
    pass


class DivergentBrightnessError(EngineError):
    """Absorption and emission coefficients coincide"""
    pass


class UndefinedEntropyError(EngineError):
    """Spectrum carries no brightness to normalise the entropy flow"""
    pass
