"""
Waldron - Interpolation Node Families
Purpose: multi-index enumeration and the simplex, Waldron, modified 3D Waldron,
concentric-triangle and spherical Waldron point sets
"""

import itertools
import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy import linalg, optimize, special
from scipy.spatial import cKDTree

from waldron.config.config import Config
from waldron.models.simplex import Simplex
from waldron.models.weights import CosineWeight, Weight
from waldron.services.basis import TotalDegreeBasis
from waldron.utils.constants import CONCENTRIC_RADII
from waldron.utils.errors import DomainError, OptimizerError

logger = logging.getLogger(__name__)


class FamilyKind(str, Enum):
    SIMPLEX = 'simplex'
    WALDRON = 'waldron'
    WALDRON_MODIFIED_3D = 'waldron3d'
    CONCENTRIC = 'concentric'
    SPHERICAL_WALDRON = 'spherical'


@dataclass(frozen=True)
class NodeFamily:
    """
    Generated interpolation point set

    Row i of every array describes node i. indices holds the multi-index
    alpha (|alpha| = n), or (ring, slot) for concentric points.
    """

    family: FamilyKind
    degree: int
    simplex: Simplex
    indices: np.ndarray
    cartesian: np.ndarray
    barycentric: np.ndarray
    baryweights: Optional[np.ndarray] = None
    weight: Optional[Weight] = None
    radii: Optional[Tuple[float, ...]] = None
    meta: Dict = field(default_factory=dict)

    def __post_init__(self):
        for name in ('indices', 'cartesian', 'barycentric', 'baryweights'):
            value = getattr(self, name)
            if value is not None:
                value.setflags(write=False)

    def __len__(self):
        return len(self.cartesian)

    @property
    def dim(self) -> int:
        return self.simplex.dim

    @property
    def label(self) -> str:
        if self.weight is not None:
            return f"{self.family.value}:{self.weight.name}"
        return self.family.value

    def index_of(self, alpha: Sequence[int]) -> int:
        """Row of a multi-index"""
        matches = np.flatnonzero(np.all(self.indices == np.asarray(alpha), axis=1))
        if len(matches) == 0:
            raise DomainError(f"Index {tuple(alpha)} not in {self.label} family of degree {self.degree}")
        return int(matches[0])

    def records(self) -> List[Dict]:
        """One dict per node: index, cartesian, barycentric (and baryweights)"""
        rows = []
        for i in range(len(self)):
            row = {
                'index': tuple(int(v) for v in self.indices[i]),
                'cartesian': tuple(float(v) for v in self.cartesian[i]),
                'barycentric': tuple(float(v) for v in self.barycentric[i]),
            }
            if self.baryweights is not None:
                row['baryweights'] = tuple(float(v) for v in self.baryweights[i])
            rows.append(row)
        return rows


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def enumerate_indices(n: int, d: int) -> np.ndarray:
    """
    All alpha in N_0^{d+1} with |alpha| = n in lexicographic order

    Returns:
        Integer array of shape (C(n+d, d), d+1)
    """
    if n < 0 or d < 1:
        raise DomainError(f"enumerate_indices needs n >= 0 and d >= 1 (got n={n}, d={d})")
    return np.array(list(_compositions(n, d + 1)), dtype=int).reshape(-1, d + 1)


def _barycentre_family(kind: FamilyKind, simplex: Simplex, weight: Optional[Weight] = None) -> NodeFamily:
    # Degree 0: a single node at the barycentre
    d = simplex.dim
    lam = np.full((1, d + 1), 1.0 / (d + 1))
    return NodeFamily(kind, 0, simplex,
                      indices=np.zeros((1, d + 1), dtype=int),
                      cartesian=simplex.from_barycentric(lam),
                      barycentric=lam,
                      weight=weight)


def simplex_points(simplex: Simplex, n: int) -> NodeFamily:
    """Equispaced lattice sum_i (alpha_i / n) V_i"""
    if n == 0:
        return _barycentre_family(FamilyKind.SIMPLEX, simplex)

    alphas = enumerate_indices(n, simplex.dim)
    lam = alphas / n
    return NodeFamily(FamilyKind.SIMPLEX, n, simplex,
                      indices=alphas,
                      cartesian=simplex.from_barycentric(lam),
                      barycentric=lam)


def waldron_points(simplex: Simplex, n: int, weight: Weight) -> NodeFamily:
    """
    Waldron points: omega_j = w(alpha_j/n) + (1 - sum_k w(alpha_k/n)) / (d+1)

    For a centred simplex the node is sum_j w(alpha_j/n) V_j directly, the
    defect term vanishing against sum_j V_j = 0.
    """
    if n == 0:
        return _barycentre_family(FamilyKind.WALDRON, simplex, weight)

    d = simplex.dim
    alphas = enumerate_indices(n, d)
    bw = weight.eval(alphas / n)
    lam = bw + (1.0 - bw.sum(axis=1, keepdims=True)) / (d + 1)

    if simplex.is_centred:
        cartesian = bw @ simplex.vertices
    else:
        cartesian = simplex.from_barycentric(lam)

    return NodeFamily(FamilyKind.WALDRON, n, simplex,
                      indices=alphas,
                      cartesian=cartesian,
                      barycentric=lam,
                      baryweights=bw,
                      weight=weight)


def waldron_points_modified_3d(simplex: Simplex, n: int, weight: Weight) -> NodeFamily:
    """
    Waldron points on a tetrahedron with face nodes forced to be 2D Waldron points

    omega_j = 0 where alpha_j = 0; the defect is shared by the k nonzero
    coordinates only.
    """
    if simplex.dim != 3:
        raise DomainError(f"Modified Waldron points are defined on tetrahedra, got d={simplex.dim}")
    if n == 0:
        return _barycentre_family(FamilyKind.WALDRON_MODIFIED_3D, simplex, weight)

    alphas = enumerate_indices(n, 3)
    bw = weight.eval(alphas / n)
    support = alphas > 0
    k = support.sum(axis=1, keepdims=True)
    defect = (1.0 - np.where(support, bw, 0.0).sum(axis=1, keepdims=True)) / k
    lam = np.where(support, bw + defect, 0.0)

    return NodeFamily(FamilyKind.WALDRON_MODIFIED_3D, n, simplex,
                      indices=alphas,
                      cartesian=simplex.from_barycentric(lam),
                      barycentric=lam,
                      baryweights=bw,
                      weight=weight)


def chebyshev_lobatto_barycentrics(n: int, weight: Optional[Weight] = None) -> np.ndarray:
    """
    Degree-n Waldron points of a segment as barycentric pairs (w(k/n), 1 - w(k/n))

    With the cosine weight on [-1, 1] these are the extended Chebyshev
    points cos(k pi / n), k = 0..n.
    """
    weight = weight or CosineWeight()
    t = weight.eval(np.arange(n + 1) / n)
    return np.column_stack([t, 1.0 - t])


def coordinate_hyperplane_simplex(alpha: Sequence[int], n: int, weight: Weight) -> np.ndarray:
    """
    Intersections of d of the d+1 hyperplanes lambda_j = w(alpha_j / n)

    Row k leaves out equation k: lambda_j = w(alpha_j/n) for j != k and
    lambda_k = 1 - sum_{j != k} w(alpha_j/n). The centroid of the rows is
    the Waldron node of alpha.
    """
    bw = weight.eval(np.asarray(alpha, dtype=float) / n)
    rows = np.tile(bw, (len(bw), 1))
    for k in range(len(bw)):
        rows[k, k] = 1.0 - (bw.sum() - bw[k])
    return rows


# Concentric triangle points

def concentric_radii_table(n: int) -> Tuple[float, ...]:
    """Tabulated radii row for 1 <= n <= 12; trailing 0 marks the origin point"""
    if n not in CONCENTRIC_RADII:
        raise DomainError(f"No tabulated concentric radii for degree {n} (table covers 1..12)")
    return CONCENTRIC_RADII[n]


def _ring_count(n: int) -> int:
    return (n - 1) // 3 + 1


def _validate_radii(n: int, radii: Sequence[float]) -> Tuple[float, ...]:
    radii = tuple(float(r) for r in radii)
    rings = _ring_count(n)
    if n % 3 == 0 and len(radii) == rings + 1 and radii[-1] == 0.0:
        radii = radii[:-1]

    if len(radii) != rings:
        raise DomainError(f"Degree {n} needs {rings} nonzero radii, got {len(radii)}")
    if radii[0] != 1.0:
        raise DomainError(f"Outer radius must be 1, got {radii[0]}")
    if any(r <= 0.0 or r > 1.0 for r in radii):
        raise DomainError("Radii must lie in (0, 1]")
    if any(a <= b for a, b in zip(radii, radii[1:])):
        raise DomainError("Radii must be strictly descending")
    return radii


def gauss_lobatto_legendre_parameters(m: int) -> np.ndarray:
    """Edge parameters (x + 1)/2 for x in {-1, roots of P_m', 1}, ascending"""
    if m < 1:
        raise DomainError(f"Edge order must be positive, got {m}")
    interior = special.roots_jacobi(m - 1, 1.0, 1.0)[0] if m > 1 else np.empty(0)
    x = np.concatenate([[-1.0], np.sort(interior), [1.0]])
    return (x + 1.0) / 2.0


def _edge_parameters(m: int, edges: str) -> np.ndarray:
    if edges == 'chebyshev':
        return chebyshev_lobatto_barycentrics(m)[:-1, 0]
    if edges == 'gll':
        return gauss_lobatto_legendre_parameters(m)[:-1]
    raise DomainError(f"Unknown edge layout '{edges}', expected chebyshev or gll")


def _concentric_layout(simplex: Simplex, n: int, radii: Sequence[float], edges: str = 'chebyshev'):
    """Cartesian points and (ring, slot) labels for validated ring radii"""
    vertices = simplex.vertices
    points, labels = [], []

    for ring, radius in enumerate(radii):
        m = n - 3 * ring
        t = _edge_parameters(m, edges)
        scaled = radius * vertices
        slot = 0
        for j in range(3):
            a, b = scaled[j], scaled[(j + 1) % 3]
            for tk in t:
                points.append(a + tk * (b - a))
                labels.append((ring, slot))
                slot += 1

    if n % 3 == 0:
        points.append(np.zeros(2))
        labels.append((len(radii), 0))

    return np.array(points), np.array(labels, dtype=int)


def concentric_points(n: int, radii: Optional[Sequence[float]] = None,
                      simplex: Optional[Simplex] = None) -> NodeFamily:
    """
    Concentric-triangle points on the centred equilateral triangle

    Ring i (radius R_i, order m = n - 3i) carries the 3 vertices R_i V_j and
    m - 1 Chebyshev-Lobatto points per edge; n divisible by 3 adds the origin.
    """
    simplex = simplex or Simplex.named('equilateral2d')
    if simplex.dim != 2 or not simplex.is_centred:
        raise DomainError("Concentric points need a centred triangle")
    if n < 0:
        raise DomainError(f"Degree must be non-negative, got {n}")
    if n == 0:
        return _barycentre_family(FamilyKind.CONCENTRIC, simplex)

    if radii is None:
        if n in CONCENTRIC_RADII:
            radii = concentric_radii_table(n)
        else:
            logger.info(f"No tabulated radii for n={n}, optimizing")
            radii = (1.0,) + optimize_concentric_radii(n)
    radii = _validate_radii(n, radii)

    cartesian, labels = _concentric_layout(simplex, n, radii)
    return NodeFamily(FamilyKind.CONCENTRIC, n, simplex,
                      indices=labels,
                      cartesian=cartesian,
                      barycentric=simplex.to_barycentric(cartesian),
                      radii=radii)


def _log_abs_det(simplex: Simplex, basis: TotalDegreeBasis, n: int, radii: Sequence[float]) -> float:
    # the tabulated radii are stationary for Gauss-Lobatto-Legendre edges
    cartesian, _ = _concentric_layout(simplex, n, radii, edges='gll')
    r = linalg.qr(basis.evaluate(cartesian), mode='r')[0]
    diag = np.abs(np.diag(r))
    if np.any(diag == 0.0):
        return -np.inf
    return float(np.sum(np.log(diag)))


def _simplex_collapsed(result) -> bool:
    simplex = result.final_simplex[0]
    return bool(np.max(np.abs(simplex[1:] - simplex[0])) <= Config.RADII_XATOL)


def _neutral_start(s: int) -> np.ndarray:
    return np.array([((s + 1 - i) / (s + 1)) ** 1.5 for i in range(1, s + 1)])


def _scan_start(objective, s: int, budget: int = 5000) -> Optional[np.ndarray]:
    """Best ordered radii on a coarse grid, when the grid stays within budget"""
    size = 200 if s == 1 else 8
    while size < 200 and math.comb(size + 1, s) <= budget:
        size += 1
    if math.comb(size, s) > budget:
        return None

    grid = np.linspace(0.0, 1.0, size + 2)[1:-1][::-1]
    best, best_value = None, np.inf
    for combo in itertools.combinations(grid, s):
        value = objective(np.array(combo))
        if value < best_value:
            best, best_value = np.array(combo), value
    return best


def optimize_concentric_radii(n: int, start: Union[str, Sequence[float]] = 'auto',
                              max_iter: int = Config.RADII_MAX_ITER) -> Tuple[float, ...]:
    """
    Inner radii (R_1, ..., R_s) maximizing |det| of the collocation matrix

    The outer radius R_0 = 1 is fixed and 1 > R_1 > ... > R_s > 0. The
    determinant is taken in a fixed total-degree basis; a basis change only
    scales it by a constant. Edge points in the objective sit at
    Gauss-Lobatto-Legendre parameters, unlike the Chebyshev-Lobatto edges
    that concentric_points lays out. Nelder-Mead minimizes -log|det| plus a
    small log-barrier on the gaps, started from the table ('table'), from
    R_i = ((s+1-i)/(s+1))^1.5 together with a coarse grid scan ('neutral'),
    or from explicit radii. 'auto' uses the table when it has the degree.

    A run counts as converged when scipy reports success or when the final
    simplex has collapsed to within RADII_XATOL.

    Raises:
        OptimizerError: iteration or evaluation limit reached; best radii attached
    """
    if n < 4:
        raise DomainError(f"Radii are forced for n < 4 (got n={n})")

    simplex = Simplex.named('equilateral2d')
    basis = TotalDegreeBasis(simplex, n)
    s = _ring_count(n) - 1

    def objective(inner: np.ndarray) -> float:
        gaps = -np.diff(np.concatenate([[1.0], inner, [0.0]]))
        if np.any(gaps <= 0.0):
            return np.inf
        log_det = _log_abs_det(simplex, basis, n, (1.0,) + tuple(inner))
        return -log_det - Config.RADII_BARRIER * float(np.sum(np.log(gaps)))

    if isinstance(start, str):
        if start == 'auto':
            start = 'table' if n in CONCENTRIC_RADII else 'neutral'
        if start == 'table':
            starts = [np.array(_validate_radii(n, concentric_radii_table(n))[1:])]
        elif start == 'neutral':
            starts = [_neutral_start(s)]
            scanned = _scan_start(objective, s)
            if scanned is not None:
                starts.append(scanned)
        else:
            raise DomainError(f"Unknown start '{start}', expected auto, table, neutral or radii")
    else:
        starts = [np.asarray(start, dtype=float)]

    best = None
    for x0 in starts:
        f0 = objective(x0)
        fatol = Config.RADII_FRTOL * (max(1.0, abs(f0)) if np.isfinite(f0) else 1.0)
        result = optimize.minimize(objective, x0, method='Nelder-Mead',
                                   options={'xatol': Config.RADII_XATOL, 'fatol': fatol,
                                            'maxiter': max_iter, 'maxfev': 4 * max_iter})
        logger.debug(f"Radii n={n} from {np.round(x0, 4)}: {result.x} (f={result.fun:.10g}, nit={result.nit})")
        if best is None or result.fun < best.fun:
            best = result

    if not (best.success or _simplex_collapsed(best)):
        raise OptimizerError(f"Radius optimization for n={n} did not converge "
                             f"({best.nit} iterations, {best.nfev} evaluations): {best.message}",
                             best=best.x)

    logger.info(f"Optimized concentric radii for n={n}: {np.array2string(best.x, precision=10)}")
    return tuple(float(r) for r in best.x)


# Spherical Waldron points

def spherical_waldron_points(n: int, weight: Weight) -> np.ndarray:
    """
    Octant set (sqrt w(alpha_i/n))_i / sqrt(sum_i w(alpha_i/n)), |alpha| = n

    Rows follow enumerate_indices(n, 2).
    """
    if n < 1:
        raise DomainError(f"Spherical Waldron points need n >= 1 (got {n})")
    bw = weight.eval(enumerate_indices(n, 2) / n)
    return np.sqrt(bw) / np.sqrt(bw.sum(axis=1, keepdims=True))


def spherical_full_sphere(n: int, weight: Weight, tol: float = Config.DEDUP_TOL) -> np.ndarray:
    """Reflect the octant set through all sign patterns; 4n^2 + 2 distinct points"""
    octant = spherical_waldron_points(n, weight)
    signs = np.array(list(itertools.product((1.0, -1.0), repeat=3)))
    candidates = (signs[:, None, :] * octant[None, :, :]).reshape(-1, 3)

    duplicate = np.zeros(len(candidates), dtype=bool)
    for i, j in sorted(cKDTree(candidates).query_pairs(tol)):
        if not duplicate[i]:
            duplicate[j] = True
    return candidates[~duplicate]
