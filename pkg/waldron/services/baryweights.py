"""
Waldron - Baryweight Coordinates
Purpose: the chart theta -> lambda on T_d and its inverse

forward adds the equally shared defect to the weighted coordinates,
lambda_j = w(theta_j) + (1 - sum_i w(theta_i)) / (d+1). invert solves
H(c) := sum_j w^{-1}(lambda_j + c) = 1 by bisection (H is continuous and
strictly increasing) and returns theta_j = w^{-1}(lambda_j + c).
"""

import logging
from dataclasses import dataclass

import numpy as np

from waldron.config.config import Config
from waldron.models.simplex import Simplex
from waldron.models.weights import Weight
from waldron.utils.errors import DomainError, NotInImageError, PropertyViolationError
from waldron.utils.roots import bisect_increasing

logger = logging.getLogger(__name__)


def _check_unit_simplex(theta: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    if np.any(theta < -tol) or np.any(np.abs(theta.sum(axis=-1) - 1.0) > tol):
        raise DomainError("theta must lie on the unit simplex (theta_j >= 0, sum = 1)")
    return np.clip(theta, 0.0, 1.0)


class BaryweightChart:
    """Baryweight coordinate system of a simplex under an allowable weight"""

    def __init__(self, simplex: Simplex, weight: Weight, root_tol: float = Config.ROOT_TOL):
        self.simplex = simplex
        self.weight = weight
        self.root_tol = root_tol

    def __repr__(self):
        return f"BaryweightChart({self.simplex.name}, {self.weight.name})"

    @property
    def dim(self) -> int:
        return self.simplex.dim

    @property
    def is_total(self) -> bool:
        """Every triangle point has unique baryweights (d = 2, complementary weight)"""
        return self.dim == 2 and self.weight.complementary

    def forward(self, theta) -> np.ndarray:
        """lambda_j = w(theta_j) + (1 - sum_i w(theta_i)) / (d+1), rowwise"""
        theta = np.asarray(theta, dtype=float)
        if theta.shape[-1] != self.dim + 1:
            raise DomainError(f"theta needs {self.dim + 1} components, got {theta.shape[-1]}")
        bw = self.weight.eval(_check_unit_simplex(theta))
        return bw + (1.0 - bw.sum(axis=-1, keepdims=True)) / (self.dim + 1)

    def h_function(self, lam, c) -> np.ndarray:
        """H(c) = sum_j w^{-1}(lambda_j + c), arguments clipped into [0, 1]"""
        lam = np.atleast_2d(np.asarray(lam, dtype=float))
        c = np.asarray(c, dtype=float).reshape(-1, 1)
        args = np.clip(lam + c, 0.0, 1.0)
        return self.weight._inverse(args).sum(axis=1)

    def invert(self, lam, return_shift: bool = False):
        """
        Baryweight preimage theta of barycentric points, rowwise

        Args:
            lam: Barycentric coordinates (d+1,) or (G, d+1), inside the simplex
            return_shift: Also return the root c of H(c) = 1

        Raises:
            NotInImageError: H(-min_j lambda_j) > 1, the point is outside the image
        """
        lam = np.asarray(lam, dtype=float)
        single = lam.ndim == 1
        lam = np.atleast_2d(lam)
        if lam.shape[1] != self.dim + 1:
            raise DomainError(f"lambda needs {self.dim + 1} components, got {lam.shape[1]}")
        if np.any(lam < -Config.BARYCENTRIC_TOL):
            raise DomainError("lambda outside the simplex")
        lam = np.clip(lam, 0.0, 1.0)

        lo = -lam.min(axis=1)
        hi = 1.0 - lam.max(axis=1)
        h_low = self.h_function(lam, lo)
        outside = h_low > 1.0 + Config.IMAGE_TOL
        if np.any(outside):
            worst = int(np.argmax(h_low))
            raise NotInImageError(
                f"{np.count_nonzero(outside)} point(s) outside the image of the chart; "
                f"H(-min lambda) = {h_low[worst]:.6g} at lambda = {lam[worst].tolist()}",
                h_low=float(h_low[worst]),
            )

        def h_rows(c):
            return self.h_function(lam, c)

        c = bisect_increasing(h_rows, np.ones(len(lam)), lo, np.maximum(hi, lo),
                              tol=self.root_tol, max_iter=Config.ROOT_MAX_ITER)
        theta = self.weight._inverse(np.clip(lam + c[:, None], 0.0, 1.0))

        if single:
            theta, c = theta[0], float(c[0])
        return (theta, c) if return_shift else theta


@dataclass(frozen=True)
class SumBounds:
    sum_w: float
    sum_winv: float
    lower_w: float
    upper_winv: float


def sum_bounds_check(weight: Weight, theta, tol: float = 1e-12) -> SumBounds:
    """
    Check (d+1) w(1/(d+1)) <= sum w(theta_j) <= 1 <= sum w^{-1}(theta_j) <= (d+1) w^{-1}(1/(d+1))

    Equalities hold at the vertices (sum w = sum w^{-1} = 1) and at the
    barycentre (the outer bounds).

    Raises:
        PropertyViolationError: an inequality fails, the weight is not allowable
    """
    theta = _check_unit_simplex(np.asarray(theta, dtype=float))
    m = theta.shape[-1]
    bounds = SumBounds(
        sum_w=float(np.sum(weight.eval(theta))),
        sum_winv=float(np.sum(weight.eval_inverse(theta))),
        lower_w=m * weight.eval(1.0 / m),
        upper_winv=m * weight.eval_inverse(1.0 / m),
    )

    if not bounds.lower_w - tol <= bounds.sum_w <= 1.0 + tol:
        raise PropertyViolationError(
            f"sum w(theta) = {bounds.sum_w:.15g} outside [{bounds.lower_w:.15g}, 1] for {weight.name}"
        )
    if not 1.0 - tol <= bounds.sum_winv <= bounds.upper_winv + tol:
        raise PropertyViolationError(
            f"sum w^-1(theta) = {bounds.sum_winv:.15g} outside [1, {bounds.upper_winv:.15g}] for {weight.name}"
        )
    return bounds
