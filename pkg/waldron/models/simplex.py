"""
Waldron - Simplex Geometry
Purpose: vertices, Cartesian <-> barycentric transforms, Baran distance, sphere lift
"""

import logging
import re
from pathlib import Path
from typing import Optional, Union

import numpy as np
from scipy.linalg import lu_factor, lu_solve

from waldron.config.config import Config
from waldron.utils.constants import CENTRED_3D, EQUILATERAL_2D
from waldron.utils.errors import DegenerateSimplexError, DomainError

logger = logging.getLogger(__name__)


class Simplex:
    """
    Non-degenerate simplex with d+1 vertices in R^d

    The edge matrix [V_1 - V_{d+1}, ..., V_d - V_{d+1}] is LU-factored once;
    to_barycentric reuses the factorization.
    """

    def __init__(self, vertices, name: Optional[str] = None):
        vertices = np.array(vertices, dtype=float)
        if vertices.ndim != 2 or vertices.shape[0] != vertices.shape[1] + 1:
            raise DomainError(f"Expected d+1 vertices in R^d, got array of shape {vertices.shape}")

        self.dim = vertices.shape[1]
        self.name = name or f"simplex{self.dim}d"
        vertices.setflags(write=False)
        self.vertices = vertices

        self._edges = (vertices[:-1] - vertices[-1]).T
        self.scale = float(np.max(np.linalg.norm(vertices - vertices.mean(axis=0), axis=1)))
        det = np.linalg.det(self._edges)
        if self.scale == 0.0 or abs(det) <= Config.DEGENERACY_TOL * self.scale ** self.dim:
            raise DegenerateSimplexError(f"Simplex '{self.name}' is degenerate (det={det:.3e})")
        self._lu = lu_factor(self._edges)

    def __repr__(self):
        return f"Simplex({self.name}, d={self.dim})"

    @property
    def is_centred(self) -> bool:
        """Vertices sum to the origin"""
        size = np.max(np.linalg.norm(self.vertices, axis=1))
        return bool(np.linalg.norm(self.vertices.sum(axis=0)) <= 1e-12 * size)

    @property
    def diameter(self) -> float:
        diffs = self.vertices[:, None, :] - self.vertices[None, :, :]
        return float(np.max(np.linalg.norm(diffs, axis=-1)))

    @property
    def barycentre(self) -> np.ndarray:
        return self.vertices.mean(axis=0)

    def to_barycentric(self, x) -> np.ndarray:
        """
        Barycentric coordinates of one point (d,) or many points (G, d)

        Returns:
            Array (d+1,) or (G, d+1) whose rows sum to one
        """
        x = np.asarray(x, dtype=float)
        single = x.ndim == 1
        pts = np.atleast_2d(x)
        if pts.shape[1] != self.dim:
            raise DomainError(f"Points of dimension {pts.shape[1]} for a {self.dim}-simplex")

        mu = lu_solve(self._lu, (pts - self.vertices[-1]).T).T
        lam = np.concatenate([mu, 1.0 - mu.sum(axis=1, keepdims=True)], axis=1)
        return lam[0] if single else lam

    def from_barycentric(self, lam) -> np.ndarray:
        """sum_i lambda_i V_i for one (d+1,) or many (G, d+1) coordinate rows"""
        lam = np.asarray(lam, dtype=float)
        if lam.shape[-1] != self.dim + 1:
            raise DomainError(f"Expected {self.dim + 1} barycentric coordinates, got {lam.shape[-1]}")
        return lam @ self.vertices

    @classmethod
    def named(cls, name: str) -> 'Simplex':
        """equilateral2d | centred3d | unit<d>"""
        if name == 'equilateral2d':
            return cls(EQUILATERAL_2D, name=name)
        if name == 'centred3d':
            return cls(CENTRED_3D, name=name)

        match = re.fullmatch(r'unit(\d+)', name)
        if match:
            d = int(match.group(1))
            if d < 1:
                raise DomainError("unit<d> needs d >= 1")
            return cls(np.vstack([np.eye(d), np.zeros(d)]), name=name)

        raise DomainError(f"Unknown simplex '{name}'")

    @classmethod
    def from_csv(cls, path: Union[str, Path]) -> 'Simplex':
        """One vertex per row, comma separated, '#' comments allowed"""
        path = Path(path)
        try:
            vertices = np.loadtxt(path, delimiter=',', comments='#', ndmin=2)
        except OSError as exc:
            raise DomainError(f"Cannot read vertex file {path}: {exc}") from exc
        except ValueError as exc:
            raise DomainError(f"Malformed vertex file {path}: {exc}") from exc
        return cls(vertices, name=path.stem)

    @classmethod
    def from_spec(cls, spec: str) -> 'Simplex':
        """Named simplex or path to a vertex CSV"""
        if Path(spec).suffix == '.csv':
            return cls.from_csv(spec)
        return cls.named(spec)


def inside_simplex(lam, tol: float = Config.BARYCENTRIC_TOL) -> np.ndarray:
    """Rows sum to one and are componentwise >= -tol"""
    lam = np.asarray(lam, dtype=float)
    return (np.abs(lam.sum(axis=-1) - 1.0) <= tol) & np.all(lam >= -tol, axis=-1)


def _check_nonnegative(lam, tol: float = Config.BARYCENTRIC_TOL) -> np.ndarray:
    lam = np.asarray(lam, dtype=float)
    if np.any(lam < -tol):
        raise DomainError("Barycentric coordinates must be non-negative (point outside the simplex)")
    return np.clip(lam, 0.0, None)


def sphere_lift(lam) -> np.ndarray:
    """(sqrt(lambda_1), ..., sqrt(lambda_{d+1})), a point of the positive orthant of the unit sphere"""
    return np.sqrt(_check_nonnegative(lam))


def great_circle_distance(u, v) -> np.ndarray:
    """Angle between unit vectors, rowwise"""
    dots = np.sum(np.asarray(u, dtype=float) * np.asarray(v, dtype=float), axis=-1)
    return np.arccos(np.clip(dots, -1.0, 1.0))


def baran_distance(a, b) -> Union[float, np.ndarray]:
    """arccos(sum_i sqrt(a_i b_i)), in [0, pi/2] for points of the simplex"""
    a = _check_nonnegative(a)
    b = _check_nonnegative(b)
    dots = np.sum(np.sqrt(a * b), axis=-1)
    result = np.arccos(np.clip(dots, 0.0, 1.0))
    return float(result) if np.ndim(result) == 0 else result
