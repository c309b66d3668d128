"""
Waldron - Allowable Weight Functions
Purpose: weight functions w:[0,1]->[0,1] used to warp barycentric coordinates

A weight is allowable when it is increasing with w(0)=0, w(1)=1 and
sum w(theta_i) <= 1 on the unit simplex. Weights built from a non-negative,
non-decreasing density F on [0,1/2] with integral 1/2 are allowable,
complementary (w(x) + w(1-x) = 1) and superadditive.
"""

import logging
from enum import Enum
from pathlib import Path
from typing import Callable, Optional, Union

import numpy as np
from scipy import integrate
from scipy.interpolate import CubicHermiteSpline

from waldron.config.config import Config
from waldron.utils.errors import DomainError
from waldron.utils.roots import bisect_increasing

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]


class WeightKind(str, Enum):
    IDENTITY = 'identity'
    COSINE = 'cosine'
    QUADRATIC = 'quad'
    DENSITY = 'density'
    CONVEX = 'convex'


def _restore_shape(x_in, values: np.ndarray):
    """Return a float for scalar input, an array otherwise"""
    if np.ndim(x_in) == 0:
        return float(values)
    return values


class Density:
    """
    Non-negative, non-decreasing density F on [0, 1/2] with integral 1/2

    The symmetric extension F(t) := F(1 - t) on (1/2, 1] is applied by
    the weight built from it.
    """

    def __init__(self, f: Callable[[np.ndarray], np.ndarray],
                 normalize: bool = False,
                 tol: float = Config.DENSITY_NORMALIZATION_TOL,
                 label: str = 'density'):
        self.label = label
        integral, _ = integrate.quad(lambda t: float(f(t)), 0.0, 0.5,
                                     epsabs=Config.DENSITY_QUAD_TOL, limit=200)

        if integral <= 0:
            raise DomainError(f"Density '{label}' has non-positive integral {integral!r}")

        if abs(integral - 0.5) > tol:
            if not normalize:
                raise DomainError(
                    f"Density '{label}' integrates to {integral:.12g} on [0, 1/2], expected 1/2 "
                    f"(pass normalize=True to rescale)"
                )
            logger.info(f"Rescaling density '{label}' by {0.5 / integral:.12g}")
            scale = 0.5 / integral
            self._f = lambda t: scale * np.asarray(f(t), dtype=float)
            self.normalization = 0.5
        else:
            self._f = lambda t: np.asarray(f(t), dtype=float)
            self.normalization = integral

        samples = self._f(np.linspace(0.0, 0.5, 1025))
        if np.any(samples < -tol):
            raise DomainError(f"Density '{label}' takes negative values")
        if np.any(np.diff(samples) < -tol):
            raise DomainError(f"Density '{label}' is not non-decreasing on [0, 1/2]")

    def __call__(self, t: ArrayLike) -> np.ndarray:
        """Evaluate F on [0, 1/2]"""
        return self._f(t)

    def extended(self, t: ArrayLike) -> np.ndarray:
        """Symmetric extension to [0, 1]; at t = 1/2 this is F(1/2), the left limit"""
        t = np.asarray(t, dtype=float)
        return self._f(np.minimum(t, 1.0 - t))

    @classmethod
    def from_csv(cls, path: Union[str, Path], normalize: bool = False) -> 'Density':
        """
        Load samples t,F(t) on [0, 1/2] and interpolate linearly

        A non-numeric first line is treated as a header.
        """
        path = Path(path)
        try:
            with path.open() as fh:
                first = fh.readline()
        except OSError as exc:
            raise DomainError(f"Cannot read density file {path}: {exc}") from exc
        try:
            [float(v) for v in first.strip().split(',')]
            skip = 0
        except ValueError:
            skip = 1

        try:
            data = np.loadtxt(path, delimiter=',', skiprows=skip, ndmin=2)
        except ValueError as exc:
            raise DomainError(f"Malformed density file {path}: {exc}") from exc
        if data.shape[1] < 2 or data.shape[0] < 2:
            raise DomainError(f"Density file {path} needs at least two rows of t,F(t)")

        order = np.argsort(data[:, 0])
        ts, values = data[order, 0], data[order, 1]
        if ts[0] > 0.0 or ts[-1] < 0.5:
            raise DomainError(f"Density file {path} must cover [0, 1/2]")

        return cls(lambda t: np.interp(t, ts, values), normalize=normalize, label=path.name)


class Weight:
    """
    Allowable weight function on [0, 1]

    Subclasses provide vectorized _eval/_inverse/_derivative on clipped input.
    """

    kind: WeightKind = None
    complementary = True

    def __init__(self, eval_tol: float = Config.EVAL_TOL):
        self.eval_tol = eval_tol

    @property
    def name(self) -> str:
        return self.kind.value

    def __repr__(self):
        return f"{type(self).__name__}({self.name})"

    def _check_unit(self, x: ArrayLike, what: str) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if np.any(x < -self.eval_tol) or np.any(x > 1.0 + self.eval_tol) or np.any(np.isnan(x)):
            raise DomainError(f"{self.name}: {what} outside [0, 1]")
        return np.clip(x, 0.0, 1.0)

    def eval(self, x: ArrayLike) -> ArrayLike:
        """w(x) for x in [0, 1]"""
        return _restore_shape(x, self._eval(self._check_unit(x, 'argument')))

    __call__ = eval

    def eval_inverse(self, y: ArrayLike) -> ArrayLike:
        """w^{-1}(y) for y in [0, 1]"""
        return _restore_shape(y, self._inverse(self._check_unit(y, 'value')))

    def eval_derivative(self, x: ArrayLike) -> ArrayLike:
        """w'(x); at kinks this is the left limit"""
        return _restore_shape(x, self._derivative(self._check_unit(x, 'argument')))

    def _inverse(self, y: np.ndarray) -> np.ndarray:
        # Bisection: w is monotone but w' may vanish at the endpoints
        return bisect_increasing(self._eval, y, 0.0, 1.0, tol=self.eval_tol,
                                 max_iter=Config.INVERSE_MAX_ITER)

    # Allowable-weight predicates

    def check_superadditive(self, theta) -> bool:
        """sum w(theta_j) <= w(sum theta_j) for theta_j >= 0, sum theta_j <= 1"""
        theta = np.asarray(theta, dtype=float)
        if np.any(theta < 0) or theta.sum() > 1.0 + self.eval_tol:
            raise DomainError("check_superadditive needs theta_j >= 0 with sum <= 1")
        total = min(theta.sum(), 1.0)
        return bool(np.sum(self._eval(theta)) <= self._eval(np.array(total)) + self.eval_tol)

    def check_allowable_sum(self, theta) -> bool:
        """sum w(theta_j) <= 1 for theta on the unit simplex"""
        theta = np.asarray(theta, dtype=float)
        if np.any(theta < 0) or abs(theta.sum() - 1.0) > Config.BARYCENTRIC_TOL:
            raise DomainError("check_allowable_sum needs theta_j >= 0 with sum 1")
        return bool(np.sum(self._eval(theta)) <= 1.0 + self.eval_tol)

    def check_complementary(self, x: ArrayLike, tol: float = 1e-12) -> bool:
        """w(x) + w(1 - x) = 1"""
        x = self._check_unit(x, 'argument')
        return bool(np.all(np.abs(self._eval(x) + self._eval(1.0 - x) - 1.0) <= tol))

    def check_diagonal_bounds(self, x: ArrayLike) -> bool:
        """w(x) <= x on [0, 1/2] and w(x) >= x on [1/2, 1]"""
        x = self._check_unit(x, 'argument')
        w = self._eval(x)
        lower = x <= 0.5
        ok_lower = np.all(w[lower] <= x[lower] + self.eval_tol)
        ok_upper = np.all(w[~lower] >= x[~lower] - self.eval_tol)
        return bool(ok_lower and ok_upper)


class IdentityWeight(Weight):
    """w(x) = x; recovers the simplex points"""

    kind = WeightKind.IDENTITY

    def _eval(self, x):
        return x.copy()

    def _inverse(self, y):
        return y.copy()

    def _derivative(self, x):
        return np.ones_like(x)


class CosineWeight(Weight):
    """w(x) = (1 - cos(pi x)) / 2, from F(t) = (pi/2) sin(pi t)"""

    kind = WeightKind.COSINE

    def _eval(self, x):
        return 0.5 * (1.0 - np.cos(np.pi * x))

    def _inverse(self, y):
        return np.arccos(1.0 - 2.0 * y) / np.pi

    def _derivative(self, x):
        return 0.5 * np.pi * np.sin(np.pi * x)


class QuadraticWeight(Weight):
    """w(x) = 2x^2 on [0, 1/2], 1 - 2(1-x)^2 on [1/2, 1], from F(t) = 4t"""

    kind = WeightKind.QUADRATIC

    def _eval(self, x):
        return np.where(x <= 0.5, 2.0 * x * x, 1.0 - 2.0 * (1.0 - x) ** 2)

    def _inverse(self, y):
        return np.where(y <= 0.5, np.sqrt(0.5 * y), 1.0 - np.sqrt(0.5 * (1.0 - y)))

    def _derivative(self, x):
        # F is continuous at 1/2, both one-sided limits equal 2
        return np.where(x <= 0.5, 4.0 * x, 4.0 * (1.0 - x))


class DensityWeight(Weight):
    """
    w(x) = integral_0^x F~(t) dt for a user density F

    The antiderivative on [0, 1/2] is tabulated once on Chebyshev-spaced
    nodes (piecewise quad integrals) and held as a cubic Hermite spline whose
    slopes are F itself; the upper half follows from w(x) = 1 - w(1 - x).
    """

    kind = WeightKind.DENSITY

    def __init__(self, density: Density,
                 nodes: int = Config.DENSITY_SPLINE_NODES,
                 eval_tol: float = Config.EVAL_TOL):
        super().__init__(eval_tol)
        self.density = density

        k = np.arange(nodes)
        ts = 0.25 * (1.0 - np.cos(np.pi * k / (nodes - 1)))
        pieces = [
            integrate.quad(lambda t: float(density(t)), a, b, epsabs=Config.DENSITY_QUAD_TOL)[0]
            for a, b in zip(ts[:-1], ts[1:])
        ]
        values = np.concatenate([[0.0], np.cumsum(pieces)])
        # Pin w(1/2) = 1/2 so that w(1) = 1 and complementarity hold exactly
        scale = 0.5 / values[-1]
        self._spline = CubicHermiteSpline(ts, values * scale, density(ts) * scale)
        logger.debug(f"Tabulated density weight '{density.label}' on {nodes} nodes")

    @property
    def name(self) -> str:
        return f"density:{self.density.label}"

    def _eval(self, x):
        lower = np.minimum(x, 1.0 - x)
        half = np.clip(self._spline(lower), 0.0, 0.5)
        return np.where(x <= 0.5, half, 1.0 - half)

    def _derivative(self, x):
        return self.density.extended(x)


class ConvexWeight(Weight):
    """t * w1 + (1 - t) * w0; convex combinations of allowable weights are allowable"""

    kind = WeightKind.CONVEX

    def __init__(self, t: float, w0: Weight, w1: Weight, eval_tol: float = Config.EVAL_TOL):
        if not 0.0 <= t <= 1.0:
            raise DomainError(f"Convex parameter t={t} outside [0, 1]")
        super().__init__(eval_tol)
        self.t = float(t)
        self.w0 = w0
        self.w1 = w1
        self.complementary = w0.complementary and w1.complementary

    @property
    def name(self) -> str:
        return f"convex:t={self.t:g}:{self.w0.name}:{self.w1.name}"

    def _eval(self, x):
        return self.t * self.w1._eval(x) + (1.0 - self.t) * self.w0._eval(x)

    def _derivative(self, x):
        return self.t * self.w1._derivative(x) + (1.0 - self.t) * self.w0._derivative(x)


BUILTIN_WEIGHTS = {
    'identity': IdentityWeight,
    'cosine': CosineWeight,
    'quad': QuadraticWeight,
}


def weight_from_spec(spec: str) -> Weight:
    """
    Parse a weight name as used on the command line

    identity | cosine | quad | convex:t=<t>:<w0>:<w1> | density:file=<path>
    """
    spec = spec.strip()
    if spec in BUILTIN_WEIGHTS:
        return BUILTIN_WEIGHTS[spec]()

    head, _, rest = spec.partition(':')
    if head == 'convex':
        parts = rest.split(':')
        if len(parts) != 3 or not parts[0].startswith('t='):
            raise DomainError(f"Malformed convex weight '{spec}', expected convex:t=<t>:<w0>:<w1>")
        try:
            t = float(parts[0][2:])
        except ValueError:
            raise DomainError(f"Convex parameter '{parts[0]}' is not a number")
        return ConvexWeight(t, weight_from_spec(parts[1]), weight_from_spec(parts[2]))

    if head == 'density':
        if not rest.startswith('file='):
            raise DomainError(f"Malformed density weight '{spec}', expected density:file=<path>")
        path = Path(rest[len('file='):])
        if not path.exists():
            raise DomainError(f"Density file not found: {path}")
        return DensityWeight(Density.from_csv(path))

    raise DomainError(f"Unknown weight '{spec}'")
