"""
Waldron Models Package
"""

from waldron.models.simplex import Simplex
from waldron.models.weights import CosineWeight, Density, DensityWeight, IdentityWeight, QuadraticWeight, Weight

__all__ = ['Simplex', 'Weight', 'IdentityWeight', 'CosineWeight', 'QuadraticWeight', 'Density', 'DensityWeight']
