"""
Waldron Constants
Named simplices, the concentric-triangle radii table and CLI vocabularies
"""

import math
from pathlib import Path

# Built-in simplices (vertex rows)
EQUILATERAL_2D = (
    (-math.sqrt(3) / 2, -0.5),
    (math.sqrt(3) / 2, -0.5),
    (0.0, 1.0),
)

# Regular tetrahedron, centred at the origin, unit circumradius
CENTRED_3D = (
    (0.0, 0.0, 1.0),
    (2 * math.sqrt(2) / 3, 0.0, -1 / 3),
    (-math.sqrt(2) / 3, math.sqrt(2 / 3), -1 / 3),
    (-math.sqrt(2) / 3, -math.sqrt(2 / 3), -1 / 3),
)

NAMED_SIMPLICES = ['equilateral2d', 'centred3d', 'unit<d>']

# Concentric-triangle radii maximizing the Vandermonde determinant.
# A trailing 0 marks the single point at the origin (n divisible by 3),
# not an optimized radius.
RADII_TABLE_VERSION = '1'
CONCENTRIC_RADII = {
    1: (1.0,),
    2: (1.0,),
    3: (1.0, 0.0),
    4: (1.0, (1 + 3 * math.sqrt(5)) / 22),
    5: (1.0, 0.5467133890977183),
    6: (1.0, 0.6625914730317319, 0.0),
    7: (1.0, 0.7392097205159041, 0.2099178922839476),
    8: (1.0, 0.7926979593397175, 0.3630731196442392),
    9: (1.0, 0.8314018389721662, 0.4713481792856927, 0.0),
    10: (1.0, 0.8603011832477779, 0.5547886858166182, 0.1489400918406532),
    11: (1.0, 0.8824295392910452, 0.6207291455415433, 0.2691541556591404),
    12: (1.0, 0.8997282443826207, 0.6734543809542708, 0.3612491207621312, 0.0),
}

# Node families and schemes accepted on the command line
FAMILY_NAMES = ['simplex', 'waldron', 'waldron3d', 'concentric', 'spherical']
SCHEME_NAMES = ['simplex', 'waldron', 'rational', 'polynomial']
WEIGHT_NAMES = ['identity', 'cosine', 'quad']
OUTPUT_FORMATS = ['csv', 'json']

# Golden Lebesgue tables shipped with the package
GOLDEN_DIR = Path(__file__).parent.parent / 'data' / 'golden'
GOLDEN_FILES = {
    2: GOLDEN_DIR / 'lebesgue_2d.csv',
    3: GOLDEN_DIR / 'lebesgue_3d.csv',
}
GOLDEN_RTOL = {2: 0.02, 3: 0.03}
