"""
Total-degree polynomial basis on a simplex

Products of Chebyshev polynomials T_{k_1}(u_1)...T_{k_d}(u_d) with
k_1 + ... + k_d <= n, where u maps the simplex bounding box onto [-1, 1]^d.
They span the polynomials of total degree n and are far better conditioned
than raw monomials.
"""

import numpy as np
from numpy.polynomial import chebyshev

from waldron.models.simplex import Simplex


def total_degree_exponents(n: int, d: int) -> np.ndarray:
    """All k in N_0^d with |k| <= n, graded then lexicographic"""
    rows = []
    for degree in range(n + 1):
        rows.extend(_compositions(degree, d))
    return np.array(rows, dtype=int).reshape(-1, d)


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


class TotalDegreeBasis:
    """Chebyshev product basis of total degree <= n adapted to a simplex"""

    def __init__(self, simplex: Simplex, n: int):
        self.simplex = simplex
        self.degree = n
        self.exponents = total_degree_exponents(n, simplex.dim)
        lo = simplex.vertices.min(axis=0)
        hi = simplex.vertices.max(axis=0)
        self._centre = 0.5 * (lo + hi)
        self._half_width = 0.5 * (hi - lo)

    def __len__(self):
        return len(self.exponents)

    def evaluate(self, x) -> np.ndarray:
        """
        Basis values at points x (G, d)

        Returns:
            Matrix (G, N) with N = C(n+d, d)
        """
        x = np.atleast_2d(np.asarray(x, dtype=float))
        u = (x - self._centre) / self._half_width
        result = np.ones((x.shape[0], len(self.exponents)))
        for axis in range(self.simplex.dim):
            table = chebyshev.chebvander(u[:, axis], self.degree)
            result *= table[:, self.exponents[:, axis]]
        return result
