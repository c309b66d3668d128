"""
Vectorized bisection for monotone functions
"""

from typing import Callable

import numpy as np


def bisect_increasing(func: Callable[[np.ndarray], np.ndarray],
                      target: np.ndarray,
                      lo: np.ndarray,
                      hi: np.ndarray,
                      tol: float = 1e-14,
                      max_iter: int = 60) -> np.ndarray:
    """
    Solve func(x) = target elementwise for a non-decreasing func

    Every element is bracketed by [lo, hi] with func(lo) <= target <= func(hi).
    Iterates until all intervals are narrower than tol or max_iter is hit.

    Args:
        func: Vectorized non-decreasing function
        target: Right-hand sides
        lo: Lower brackets
        hi: Upper brackets
        tol: Interval width at which to stop
        max_iter: Iteration cap

    Returns:
        Midpoints of the final brackets
    """
    target = np.asarray(target, dtype=float)
    lo = np.array(np.broadcast_to(lo, target.shape), dtype=float)
    hi = np.array(np.broadcast_to(hi, target.shape), dtype=float)

    for _ in range(max_iter):
        if np.all(hi - lo <= tol):
            break
        mid = 0.5 * (lo + hi)
        below = func(mid) < target
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)

    return 0.5 * (lo + hi)
