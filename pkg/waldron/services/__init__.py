"""
Waldron Services Package
"""

from waldron.services.baryweights import BaryweightChart
from waldron.services.interp import Interpolant, PolynomialCardinals
from waldron.services.points import NodeFamily

__all__ = ['BaryweightChart', 'Interpolant', 'PolynomialCardinals', 'NodeFamily']
