"""
Waldron - Quality Metrics
Purpose: Lebesgue functions and constants on barycentric grids, comparison
tables, and spacing of the spherical Waldron points
"""

import csv
import logging
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from waldron.config.config import Config
from waldron.models.simplex import Simplex, great_circle_distance
from waldron.models.weights import CosineWeight, Weight, WeightKind, weight_from_spec
from waldron.services.interp import Interpolant, InterpolationScheme
from waldron.services.points import (
    NodeFamily,
    concentric_points,
    enumerate_indices,
    simplex_points,
    spherical_waldron_points,
    waldron_points,
    waldron_points_modified_3d,
)
from waldron.utils.errors import DomainError

logger = logging.getLogger(__name__)

GridSpec = Union[int, str]

# Upper end of D^2 / (pi/2)^2 on T_2 for the cosine weight
SPACING_MAX_RATIO = (2 * math.sqrt(3) + 3) / 3


@dataclass
class LebesgueReport:
    family: str
    scheme: str
    degree: int
    nodes: int
    grid: int
    constant: float
    argmax: Tuple[float, ...]
    elapsed: float = 0.0
    excluded_points: int = 0

    def as_row(self) -> Dict:
        """Reproducible fields only (no timing)"""
        row = asdict(self)
        row.pop('elapsed')
        return row


@dataclass
class SpacingReport:
    weight: str
    degree: Optional[int] = None
    grid: Optional[int] = None
    d2_ratio_min: Optional[float] = None
    d2_ratio_max: Optional[float] = None
    argmax_theta: Optional[Tuple[float, ...]] = None
    distance_min: Optional[float] = None
    distance_max: Optional[float] = None
    ratio_min: Optional[float] = None
    ratio_max: Optional[float] = None
    pairs: int = 0
    envelope: Tuple[float, float] = field(default=(1.0, math.sqrt(SPACING_MAX_RATIO)))

    def as_dict(self) -> Dict:
        return {k: v for k, v in asdict(self).items() if v is not None}


def barycentric_lattice(M: int, d: int) -> np.ndarray:
    """Equally spaced grid {beta / M : |beta| = M} in barycentric coordinates"""
    if M < 1:
        raise DomainError(f"Grid resolution must be >= 1, got {M}")
    return enumerate_indices(M, d) / M


def default_grid(n: int, d: int) -> int:
    """M = max(per_degree * n, minimum) for d = 2, 3"""
    if d not in Config.GRID_PER_DEGREE:
        raise DomainError(f"Lebesgue grids are supported for d = 2, 3 (got d={d})")
    return max(Config.GRID_PER_DEGREE[d] * n, Config.GRID_MINIMUM[d])


def _cardinal_evaluator(nodes: NodeFamily, scheme: InterpolationScheme) -> Callable:
    values = np.zeros(len(nodes))
    interpolant = Interpolant(scheme, nodes, values)
    if scheme is InterpolationScheme.WALDRON_RATIONAL:
        return lambda x: interpolant.cardinals(x, on_pole='nan')
    return interpolant.cardinals


def _chunk_maximum(evaluate: Callable, x: np.ndarray) -> Tuple[float, int, int]:
    lebesgue = np.abs(evaluate(x)).sum(axis=1)
    poles = np.isnan(lebesgue)
    if np.all(poles):
        return -np.inf, -1, int(poles.sum())
    lebesgue = np.where(poles, -np.inf, lebesgue)
    best = int(np.argmax(lebesgue))
    return float(lebesgue[best]), best, int(poles.sum())


def _grid_maximum(evaluate: Callable, x: np.ndarray, threads: int, chunk: int) -> Tuple[float, int, int]:
    """Max of the Lebesgue function over the rows of x; ties resolve to the first row"""
    starts = list(range(0, len(x), chunk))
    work = [x[s:s + chunk] for s in starts]

    if threads > 1 and len(work) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda part: _chunk_maximum(evaluate, part), work))
    else:
        results = [_chunk_maximum(evaluate, part) for part in work]

    # Ordered reduction keeps the result independent of scheduling
    best_value, best_row, excluded = -np.inf, -1, 0
    for start, (value, row, poles) in zip(starts, results):
        excluded += poles
        if value > best_value:
            best_value, best_row = value, start + row
    return best_value, best_row, excluded


def lebesgue_function(nodes: NodeFamily,
                      scheme: InterpolationScheme = InterpolationScheme.GENERAL_POLYNOMIAL,
                      M: int = 100,
                      chunk: int = Config.GRID_CHUNK) -> Tuple[np.ndarray, np.ndarray]:
    """
    Lebesgue function sum_alpha |ell_alpha| sampled on the lattice

    Returns:
        (cartesian grid points (G, d), values (G,)); NaN marks rational poles
    """
    evaluate = _cardinal_evaluator(nodes, InterpolationScheme(scheme))
    x = nodes.simplex.from_barycentric(barycentric_lattice(M, nodes.dim))
    values = np.concatenate([
        np.abs(evaluate(x[s:s + chunk])).sum(axis=1) for s in range(0, len(x), chunk)
    ])
    return x, values


def _lebesgue_at(nodes: NodeFamily, scheme: InterpolationScheme, M: int,
                 threads: int, chunk: int) -> LebesgueReport:
    started = time.perf_counter()
    evaluate = _cardinal_evaluator(nodes, scheme)
    x = nodes.simplex.from_barycentric(barycentric_lattice(M, nodes.dim))
    value, row, excluded = _grid_maximum(evaluate, x, threads, chunk)
    if excluded:
        logger.warning(f"{excluded} grid point(s) excluded at poles of the rational interpolant")

    report = LebesgueReport(
        family=nodes.label,
        scheme=scheme.value,
        degree=nodes.degree,
        nodes=len(nodes),
        grid=M,
        constant=value,
        argmax=tuple(float(v) for v in x[row]),
        elapsed=time.perf_counter() - started,
        excluded_points=excluded,
    )
    logger.debug(f"Lebesgue {report.family} n={report.degree} M={M}: {value:.6f} ({report.elapsed:.2f}s)")
    return report


def lebesgue_constant(nodes: NodeFamily,
                      scheme: InterpolationScheme = InterpolationScheme.GENERAL_POLYNOMIAL,
                      grid: GridSpec = 'auto',
                      threads: int = Config.THREADS,
                      chunk: int = Config.GRID_CHUNK,
                      stability: float = Config.GRID_STABILITY,
                      max_doublings: int = Config.MAX_GRID_DOUBLINGS) -> LebesgueReport:
    """
    Maximum of the Lebesgue function over the barycentric lattice with M subdivisions

    The value is a lower bound of the true constant and non-decreasing along
    M, 2M, 4M, ... (nested lattices). grid='auto' starts from default_grid and
    doubles until two successive values agree to the relative stability.
    """
    scheme = InterpolationScheme(scheme)
    if grid != 'auto':
        return _lebesgue_at(nodes, scheme, int(grid), threads, chunk)

    M = default_grid(nodes.degree, nodes.dim)
    report = _lebesgue_at(nodes, scheme, M, threads, chunk)
    for _ in range(max_doublings):
        refined = _lebesgue_at(nodes, scheme, 2 * report.grid, threads, chunk)
        change = (refined.constant - report.constant) / report.constant
        refined.elapsed += report.elapsed
        report = refined
        if change <= stability:
            break
    else:
        logger.warning(f"Lebesgue constant for {nodes.label} n={nodes.degree} not stable "
                       f"to {stability:.1%} at M={report.grid}")
    return report


# Comparison tables

def build_family(spec: str, n: int, d: int) -> NodeFamily:
    """
    Node family from a table spec

    simplex | waldron[:<weight>] | waldron3d[:<weight>] | concentric
    (weights default to cosine; concentric is 2D with tabulated radii)
    """
    head, _, weight_spec = spec.partition(':')
    weight = weight_from_spec(weight_spec) if weight_spec else CosineWeight()
    simplex = Simplex.named('equilateral2d' if d == 2 else 'centred3d' if d == 3 else f'unit{d}')

    if head == 'simplex':
        return simplex_points(simplex, n)
    if head == 'waldron':
        return waldron_points(simplex, n, weight)
    if head == 'waldron3d':
        return waldron_points_modified_3d(simplex, n, weight)
    if head == 'concentric':
        if d != 2:
            raise DomainError("Concentric points are two-dimensional")
        return concentric_points(n, simplex=simplex)
    raise DomainError(f"Unknown family '{spec}'")


def family_column(spec: str) -> str:
    """Table column label of a family spec"""
    return spec.partition(':')[0]


@dataclass
class LebesgueTable:
    dim: int
    families: List[str]
    rows: List[Dict] = field(default_factory=list)
    reports: List[LebesgueReport] = field(default_factory=list)

    @property
    def columns(self) -> List[str]:
        return ['n', 'N'] + [family_column(f) for f in self.families]


def _supported(spec: str, n: int) -> bool:
    # Concentric radii beyond the table would need the optimizer per degree
    return not (spec.startswith('concentric') and n > 12)


def lebesgue_table(families: Sequence[str], degrees: Sequence[int], d: int,
                   grid: GridSpec = 'auto',
                   scheme: InterpolationScheme = InterpolationScheme.GENERAL_POLYNOMIAL,
                   threads: int = Config.THREADS,
                   max_doublings: int = Config.MAX_GRID_DOUBLINGS) -> LebesgueTable:
    """Lebesgue constants per degree and family in the layout of the comparison tables"""
    table = LebesgueTable(dim=d, families=list(families))
    for n in degrees:
        row = {'n': n, 'N': math.comb(n + d, d)}
        for spec in families:
            column = family_column(spec)
            if not _supported(spec, n):
                logger.warning(f"No tabulated radii for {column} at n={n}, cell left empty")
                row[column] = None
                continue
            nodes = build_family(spec, n, d)
            report = lebesgue_constant(nodes, scheme=scheme, grid=grid, threads=threads,
                                       max_doublings=max_doublings)
            table.reports.append(report)
            row[column] = report.constant
            logger.info(f"d={d} n={n} {column}: {report.constant:.4f} (M={report.grid}, {report.elapsed:.1f}s)")
        table.rows.append(row)
    return table


def load_golden(path: Union[str, Path]) -> Dict[int, Dict[str, Optional[float]]]:
    """Golden table CSV keyed by degree; empty cells are None"""
    golden = {}
    with Path(path).open(newline='') as fh:
        for record in csv.DictReader(fh):
            n = int(record.pop('n'))
            golden[n] = {k: (float(v) if v not in ('', None) else None) for k, v in record.items()}
    return golden


def compare_with_golden(table: LebesgueTable, golden: Dict[int, Dict[str, Optional[float]]],
                        rtol: float) -> List[Dict]:
    """
    Rowwise comparison against golden values

    Returns:
        One record per compared cell with computed, expected, relative error and pass flag
    """
    diffs = []
    for row in table.rows:
        expected_row = golden.get(row['n'], {})
        for column in table.columns[2:]:
            computed, expected = row.get(column), expected_row.get(column)
            if computed is None or expected is None:
                continue
            rel = abs(computed - expected) / abs(expected)
            diffs.append({
                'n': row['n'],
                'family': column,
                'computed': computed,
                'expected': expected,
                'rel_error': rel,
                'ok': rel <= rtol,
            })
    return diffs


# Spacing of spherical Waldron points

def _sphere_map(weight: Weight, theta: np.ndarray) -> np.ndarray:
    bw = weight.eval(np.clip(theta, 0.0, 1.0))
    return np.sqrt(bw) / np.sqrt(bw.sum(axis=-1, keepdims=True))


def spacing_D(theta, weight: Optional[Weight] = None, h: float = 1e-6) -> Tuple[Optional[float], float]:
    """
    D^2 = ||dX/dtheta_1 - dX/dtheta_2||^2 for X(theta) = sqrt(w(theta)) / sqrt(W(theta))

    Returns:
        (closed form, central finite difference along e_1 - e_2). The closed
        form (pi/2)^2 (1 + w_3 (1 - w_1 - w_2)) / W^2 holds for the cosine
        weight only and is None otherwise.
    """
    weight = weight or CosineWeight()
    theta = np.asarray(theta, dtype=float)
    if theta.shape != (3,) or np.any(theta < 0) or abs(theta.sum() - 1.0) > 1e-12:
        raise DomainError("spacing_D needs theta on T_2")

    bw = weight.eval(theta)
    total = bw.sum()
    if total <= 0.0:
        raise DomainError("W(theta) = 0")

    step = np.array([h, -h, 0.0])
    derivative = (_sphere_map(weight, theta + step) - _sphere_map(weight, theta - step)) / (2 * h)
    numeric = float(np.dot(derivative, derivative))

    closed = None
    if weight.kind is WeightKind.COSINE:
        closed = float((math.pi / 2) ** 2 * (1 + bw[2] * (1 - bw[0] - bw[1])) / total ** 2)
    return closed, numeric


def spacing_extrema(M: int = 2000, weight: Optional[Weight] = None) -> SpacingReport:
    """
    Extremes of D^2 / (pi/2)^2 over the lattice of T_2 (cosine closed form)

    Minimum 1 on the edges; maximum (2 sqrt 3 + 3) / 3 where sqrt(w(theta_3)) = sqrt 3 - 1.
    """
    weight = weight or CosineWeight()
    if weight.kind is not WeightKind.COSINE:
        raise DomainError("The closed-form spacing analysis is specific to the cosine weight")
    if M < 100:
        raise DomainError(f"spacing_extrema needs M >= 100, got {M}")

    theta = barycentric_lattice(M, 2)
    bw = weight.eval(theta)
    ratio = (1 + bw[:, 2] * (1 - bw[:, 0] - bw[:, 1])) / bw.sum(axis=1) ** 2
    best = int(np.argmax(ratio))
    return SpacingReport(
        weight=weight.name,
        grid=M,
        d2_ratio_min=float(ratio.min()),
        d2_ratio_max=float(ratio[best]),
        argmax_theta=tuple(float(v) for v in theta[best]),
    )


def neighbor_spacing(points: np.ndarray, n: int, weight_name: str = 'cosine') -> SpacingReport:
    """
    Great-circle distances between spherical points of neighbouring indices

    alpha and beta are neighbours when beta = alpha + e_i - e_j. Rows of
    points follow enumerate_indices(n, 2). Ratios are relative to pi / (2n).
    """
    if n < 2:
        raise DomainError(f"neighbor_spacing needs n >= 2, got {n}")
    alphas = enumerate_indices(n, 2)
    if len(points) != len(alphas):
        raise DomainError(f"Expected {len(alphas)} points for degree {n}, got {len(points)}")

    row_of = {tuple(a): r for r, a in enumerate(alphas)}
    first, second = [], []
    for r, alpha in enumerate(alphas):
        for i in range(3):
            for j in range(3):
                if i == j or alpha[j] == 0:
                    continue
                beta = alpha.copy()
                beta[i] += 1
                beta[j] -= 1
                other = row_of[tuple(beta)]
                if r < other:
                    first.append(r)
                    second.append(other)

    distances = great_circle_distance(points[first], points[second])
    unit = math.pi / (2 * n)
    return SpacingReport(
        weight=weight_name,
        degree=n,
        distance_min=float(distances.min()),
        distance_max=float(distances.max()),
        ratio_min=float(distances.min() / unit),
        ratio_max=float(distances.max() / unit),
        pairs=len(distances),
    )


def spherical_spacing(n: int, weight: Optional[Weight] = None) -> SpacingReport:
    """neighbor_spacing of the octant spherical Waldron points"""
    weight = weight or CosineWeight()
    return neighbor_spacing(spherical_waldron_points(n, weight), n, weight.name)
