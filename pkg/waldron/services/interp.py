"""
Waldron - Cardinal Functions and Interpolants
Purpose: explicit simplex-point Lagrange polynomials, explicit Waldron cardinal
functions, their rational normalization, and collocation cardinals for any
unisolvent node set
"""

import logging
import math
from enum import Enum
from typing import Optional, Sequence

import numpy as np
from scipy import linalg

from waldron.config.config import Config
from waldron.models.weights import Weight
from waldron.services.baryweights import BaryweightChart
from waldron.services.basis import TotalDegreeBasis
from waldron.services.points import FamilyKind, NodeFamily, enumerate_indices
from waldron.utils.errors import DomainError, NonUnisolventError, PoleError

logger = logging.getLogger(__name__)


class InterpolationScheme(str, Enum):
    SIMPLEX_EXPLICIT = 'simplex'
    WALDRON_EXPLICIT = 'waldron'
    WALDRON_RATIONAL = 'rational'
    GENERAL_POLYNOMIAL = 'polynomial'


def _level_products(coords: np.ndarray, levels: np.ndarray) -> np.ndarray:
    """
    P[g, i, k] = prod_{j<k} (coords[g, i] - levels[j]) for k = 0..n

    coords is (G, d+1); levels holds the n+1 grid levels.
    """
    n = len(levels) - 1
    factors = coords[:, :, None] - levels[None, None, :n]
    table = np.ones(coords.shape + (n + 1,))
    if n > 0:
        table[:, :, 1:] = np.cumprod(factors, axis=2)
    return table


def _product_cardinals(coords: np.ndarray, levels: np.ndarray, alphas: np.ndarray) -> np.ndarray:
    """
    ell_alpha = C_alpha prod_i prod_{j<alpha_i} (coords_i - levels_j) for every alpha

    C_alpha^{-1} = prod_i prod_{j<alpha_i} (levels_{alpha_i} - levels_j), so
    ell_alpha equals 1 where coords = levels[alpha] and 0 at the other nodes.

    Returns:
        Matrix (G, N)
    """
    table = _level_products(coords, levels)
    node_table = _level_products(levels[alphas], levels)
    d1 = alphas.shape[1]
    columns = np.arange(d1)
    numer = np.ones((coords.shape[0], len(alphas)))
    denom = np.ones(len(alphas))
    for i in columns:
        numer *= table[:, i, alphas[:, i]]
        denom *= node_table[np.arange(len(alphas)), i, alphas[:, i]]
    return numer / denom


def _as_rows(lam) -> np.ndarray:
    return np.atleast_2d(np.asarray(lam, dtype=float))


def simplex_cardinal(n: int, d: int, alpha: Sequence[int], lam) -> np.ndarray:
    """
    ell_alpha(lambda) = C_alpha prod_i prod_{j<alpha_i} (lambda_i - j/n), C_alpha^{-1} = n^{-n} prod alpha_i!

    Returns:
        Value at each row of lam (scalar for a single point)
    """
    alpha = np.asarray(alpha, dtype=int)
    if alpha.sum() != n or len(alpha) != d + 1:
        raise DomainError(f"alpha={tuple(alpha)} is not a degree-{n} index in dimension {d}")

    rows = _as_rows(lam)
    value = np.ones(len(rows))
    for i, a in enumerate(alpha):
        for j in range(a):
            value *= rows[:, i] - j / n
    const = n ** n / math.prod(math.factorial(int(a)) for a in alpha) if n > 0 else 1.0
    value *= const
    return float(value[0]) if np.ndim(lam) == 1 else value


def simplex_cardinals(n: int, d: int, lam) -> np.ndarray:
    """All simplex-point cardinals at lam, columns in enumerate_indices(n, d) order"""
    alphas = enumerate_indices(n, d)
    if n == 0:
        return np.ones((len(_as_rows(lam)), 1))
    return _product_cardinals(_as_rows(lam), np.arange(n + 1) / n, alphas)


def _check_waldron_chart(chart: BaryweightChart):
    if chart.dim != 2 or not chart.simplex.is_centred or not chart.weight.complementary:
        raise DomainError(
            "Explicit Waldron cardinals need a centred triangle and a complementary weight"
        )


def waldron_cardinals(chart: BaryweightChart, n: int, x) -> np.ndarray:
    """
    All explicit Waldron cardinals at points x (G, 2)

    One inversion of the chart per point is shared by every alpha:
    theta = invert(lambda(x)), then ell_alpha = C_alpha prod_i prod_{j<alpha_i}
    (w(theta_i) - w(j/n)).
    """
    _check_waldron_chart(chart)
    x = np.atleast_2d(np.asarray(x, dtype=float))
    alphas = enumerate_indices(n, 2)
    if n == 0:
        return np.ones((len(x), 1))

    # w(theta_j) = lambda_j + c at the root c
    lam = chart.simplex.to_barycentric(x)
    _, shift = chart.invert(lam, return_shift=True)
    baryweights = np.clip(lam + shift[:, None], 0.0, 1.0)
    levels = chart.weight.eval(np.arange(n + 1) / n)
    return _product_cardinals(baryweights, levels, alphas)


def waldron_cardinal(chart: BaryweightChart, n: int, alpha: Sequence[int], x):
    """Explicit Waldron cardinal of one index at one point (d+1 = 3) or many"""
    alpha = tuple(int(a) for a in alpha)
    alphas = [tuple(a) for a in enumerate_indices(n, 2)]
    if alpha not in alphas:
        raise DomainError(f"alpha={alpha} is not a degree-{n} index in dimension 2")
    values = waldron_cardinals(chart, n, x)[:, alphas.index(alpha)]
    return float(values[0]) if np.ndim(x) == 1 else values


def rational_cardinals(chart: BaryweightChart, n: int, x,
                       pole_tol: float = Config.POLE_TOL,
                       on_pole: str = 'raise') -> np.ndarray:
    """
    Waldron cardinals divided by their sum: a partition of unity

    Args:
        on_pole: 'raise' for PoleError, 'nan' to mark pole rows with NaN

    Raises:
        PoleError: |sum_beta ell_beta(x)| < pole_tol at some point
    """
    x = np.atleast_2d(np.asarray(x, dtype=float))
    values = waldron_cardinals(chart, n, x)
    denom = values.sum(axis=1, keepdims=True)
    poles = np.abs(denom[:, 0]) < pole_tol
    if np.any(poles):
        if on_pole == 'raise':
            where = x[np.flatnonzero(poles)[0]]
            raise PoleError(f"Rational Waldron interpolant has a pole near {where.tolist()}", location=where)
        denom = np.where(poles[:, None], np.nan, denom)
    return values / denom


def rational_cardinal(chart: BaryweightChart, n: int, alpha: Sequence[int], x):
    """Rational Waldron cardinal of one index"""
    alpha = tuple(int(a) for a in alpha)
    alphas = [tuple(a) for a in enumerate_indices(n, 2)]
    if alpha not in alphas:
        raise DomainError(f"alpha={alpha} is not a degree-{n} index in dimension 2")
    values = rational_cardinals(chart, n, x)[:, alphas.index(alpha)]
    return float(values[0]) if np.ndim(x) == 1 else values


class PolynomialCardinals:
    """
    Lagrange basis of the polynomials of total degree n for a unisolvent node set

    The collocation matrix M[alpha, k] = b_k(node_alpha) in the Chebyshev
    product basis is QR-factored once; cardinals at x solve M^T ell = b(x).
    """

    def __init__(self, nodes: NodeFamily, condition_limit: float = Config.CONDITION_LIMIT):
        self.nodes = nodes
        self.basis = TotalDegreeBasis(nodes.simplex, nodes.degree)
        if len(self.basis) != len(nodes):
            raise NonUnisolventError(
                f"{len(nodes)} nodes cannot be unisolvent for {len(self.basis)} basis functions",
                condition=np.inf,
            )

        collocation = self.basis.evaluate(nodes.cartesian)
        self._q, self._r = linalg.qr(collocation)
        self.condition = float(np.linalg.cond(self._r))
        if not np.isfinite(self.condition) or self.condition > condition_limit:
            raise NonUnisolventError(
                f"{nodes.label} nodes of degree {nodes.degree} are not unisolvent "
                f"(condition estimate {self.condition:.3e})",
                condition=self.condition,
            )
        logger.debug(f"Collocation for {nodes.label} n={nodes.degree}: cond={self.condition:.3e}")

    def __call__(self, x) -> np.ndarray:
        """Cardinal values (G, N) at points x (G, d)"""
        b = self.basis.evaluate(x)
        z = linalg.solve_triangular(self._r, b.T, trans='T')
        return (self._q @ z).T


def general_cardinals(nodes: NodeFamily, x) -> np.ndarray:
    """Polynomial cardinals of any unisolvent family at x; (N,) for one point"""
    values = PolynomialCardinals(nodes)(np.atleast_2d(x))
    return values[0] if np.ndim(x) == 1 else values


class Interpolant:
    """
    Lagrange-form interpolant q(x) = sum_alpha y_alpha ell_alpha(x)

    Values y follow the node order of the family.
    """

    def __init__(self, scheme: InterpolationScheme, nodes: NodeFamily, values,
                 weight: Optional[Weight] = None):
        self.scheme = InterpolationScheme(scheme)
        self.nodes = nodes
        self.values = np.asarray(values, dtype=float)
        if self.values.shape != (len(nodes),):
            raise DomainError(f"Expected {len(nodes)} values, got shape {self.values.shape}")

        self._chart = None
        self._cardinals = None
        if self.scheme is InterpolationScheme.GENERAL_POLYNOMIAL:
            self._cardinals = PolynomialCardinals(nodes)
        elif self.scheme is InterpolationScheme.SIMPLEX_EXPLICIT:
            if nodes.family is not FamilyKind.SIMPLEX:
                raise DomainError("The explicit simplex scheme needs simplex points")
        else:
            weight = weight or nodes.weight
            if nodes.family is not FamilyKind.WALDRON or weight is None:
                raise DomainError("Waldron schemes need Waldron points and their weight")
            self._chart = BaryweightChart(nodes.simplex, weight)
            _check_waldron_chart(self._chart)

    def cardinals(self, x, on_pole: str = 'raise') -> np.ndarray:
        """All cardinal values (G, N) at points x (G, d)"""
        x = np.atleast_2d(np.asarray(x, dtype=float))
        n, d = self.nodes.degree, self.nodes.dim
        if self.scheme is InterpolationScheme.SIMPLEX_EXPLICIT:
            return simplex_cardinals(n, d, self.nodes.simplex.to_barycentric(x))
        if self.scheme is InterpolationScheme.WALDRON_EXPLICIT:
            return waldron_cardinals(self._chart, n, x)
        if self.scheme is InterpolationScheme.WALDRON_RATIONAL:
            return rational_cardinals(self._chart, n, x, on_pole=on_pole)
        return self._cardinals(x)

    def __call__(self, x, on_pole: str = 'raise'):
        result = self.cardinals(x, on_pole=on_pole) @ self.values
        return float(result[0]) if np.ndim(x) == 1 else result


def interpolate(scheme: InterpolationScheme, nodes: NodeFamily, values, x):
    """Evaluate the scheme's interpolant of values at x"""
    return Interpolant(scheme, nodes, values)(x)


def sample_function(name: str):
    """
    Built-in test functions of (x, y)

    f1(x, y) = sin(pi (x^2 + y^2)); one(x, y) = 1
    """
    functions = {
        'f1': lambda p: np.sin(np.pi * (p[:, 0] ** 2 + p[:, 1] ** 2)),
        'one': lambda p: np.ones(len(p)),
    }
    if name not in functions:
        raise DomainError(f"Unknown builtin function '{name}', expected one of {sorted(functions)}")
    return functions[name]
