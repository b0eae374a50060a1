"""Exception and warning types raised by the gate models."""

from __future__ import annotations


class GateModelError(Exception):
    """Base class for every error raised by :mod:`gatecmp`."""


class ParameterError(GateModelError, ValueError):
    """A physical or dimensionless parameter is outside its valid domain."""


class NonPositiveRate(ParameterError):
    pass


class AsymmetricParams(ParameterError):
    """The dimensionless reduction needs Gamma2 == Gamma3 and g1 == g2."""


class NonPositiveCoupling(ParameterError):
    """Resonator coupling must be strictly positive (finite swap time)."""


class ResidualOutOfRange(ParameterError):
    pass


class DegenerateTuning(GateModelError, ArithmeticError):
    """The phase-gate denominator vanishes, so the gate time is infinite."""


class EigenvalueTrackingFailure(GateModelError, ArithmeticError):
    pass


class StepCountTooSmall(GateModelError, ValueError):
    pass


class EmptyFeasibleRegion(GateModelError):
    """No point of the coarse optimization grid could be evaluated."""


class UnknownFigure(GateModelError, ValueError):
    pass


class ConfigError(GateModelError, ValueError):
    pass


class PerturbativityWarning(UserWarning):
    """Populations of the virtual states are not small compared with 1."""
