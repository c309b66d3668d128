"""
Waldron Exceptions
Error types raised by the numerical services
"""

from typing import Optional, Sequence


class WaldronError(Exception):
    """Base class for all library errors"""


class DomainError(WaldronError, ValueError):
    """Argument outside the domain of an operation"""


class DegenerateSimplexError(DomainError):
    """Simplex vertices do not span R^d"""


class NotInImageError(WaldronError):
    """
    Barycentric point is not reachable by the baryweight chart

    Carries H(-min lambda_j) so callers can see how far outside
    the image the point lies (H > 1 means outside).
    """

    def __init__(self, message: str, h_low: float):
        super().__init__(message)
        self.h_low = h_low


class PoleError(WaldronError):
    """Denominator of the rational interpolant vanishes"""

    def __init__(self, message: str, location: Optional[Sequence[float]] = None):
        super().__init__(message)
        self.location = None if location is None else tuple(float(v) for v in location)


class NonUnisolventError(WaldronError):
    """Collocation matrix singular or too ill-conditioned"""

    def __init__(self, message: str, condition: float):
        super().__init__(message)
        self.condition = condition


class OptimizerError(WaldronError):
    """Optimizer did not converge; best-found iterate attached"""

    def __init__(self, message: str, best: Sequence[float]):
        super().__init__(message)
        self.best = tuple(float(v) for v in best)


class PropertyViolationError(WaldronError):
    """A defining inequality of allowable weights failed"""
