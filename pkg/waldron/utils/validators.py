"""
Input Validation Functions
"""

import re
from pathlib import Path
from typing import List, Optional, Tuple

from waldron.utils.constants import FAMILY_NAMES, OUTPUT_FORMATS, SCHEME_NAMES, WEIGHT_NAMES


def parse_degrees(text: str) -> List[int]:
    """'8' | '1..16' | '1,2,5' -> sorted unique degrees"""
    degrees = set()
    for part in text.split(','):
        part = part.strip()
        match = re.fullmatch(r'(\d+)\.\.(\d+)', part)
        if match:
            lo, hi = int(match.group(1)), int(match.group(2))
            if lo > hi:
                raise ValueError(f"empty degree range '{part}'")
            degrees.update(range(lo, hi + 1))
        else:
            degrees.add(int(part))
    return sorted(degrees)


def validate_degrees(text: str, maximum: int = 40) -> Tuple[bool, Optional[str]]:
    """
    Validate a degree list or range

    Returns:
        (is_valid, error_message)
    """
    try:
        degrees = parse_degrees(text)
    except ValueError:
        return False, f"invalid degree list '{text}' (expected n, a..b or a,b,c)"

    if not degrees:
        return False, "no degrees given"
    if degrees[-1] > maximum:
        return False, f"degree {degrees[-1]} exceeds the supported maximum {maximum}"
    return True, None


def validate_family(name: str, dim: Optional[int] = None) -> Tuple[bool, Optional[str]]:
    """Validate a node family name, optionally against the dimension"""
    head = name.partition(':')[0]
    if head not in FAMILY_NAMES:
        return False, f"unknown family '{name}'. Allowed: {', '.join(FAMILY_NAMES)}"
    if dim is not None:
        if head == 'concentric' and dim != 2:
            return False, "concentric points are two-dimensional"
        if head == 'waldron3d' and dim != 3:
            return False, "waldron3d points are three-dimensional"
    return True, None


def validate_weight(spec: str) -> Tuple[bool, Optional[str]]:
    """Syntactic check of a weight spec; density files must exist"""
    head, _, rest = spec.partition(':')
    if spec in WEIGHT_NAMES:
        return True, None
    if head == 'convex':
        parts = rest.split(':')
        if len(parts) != 3 or not parts[0].startswith('t='):
            return False, f"malformed convex weight '{spec}' (expected convex:t=<t>:<w0>:<w1>)"
        try:
            t = float(parts[0][2:])
        except ValueError:
            return False, f"convex parameter '{parts[0]}' is not a number"
        if not 0.0 <= t <= 1.0:
            return False, f"convex parameter t={t} outside [0, 1]"
        for inner in parts[1:]:
            is_valid, error = validate_weight(inner)
            if not is_valid:
                return False, error
        return True, None
    if head == 'density':
        if not rest.startswith('file='):
            return False, f"malformed density weight '{spec}' (expected density:file=<path>)"
        if not Path(rest[len('file='):]).exists():
            return False, f"density file not found: {rest[len('file='):]}"
        return True, None
    return False, f"unknown weight '{spec}'. Allowed: {', '.join(WEIGHT_NAMES)}, convex:..., density:file=..."


def validate_scheme(name: str) -> Tuple[bool, Optional[str]]:
    if name not in SCHEME_NAMES:
        return False, f"unknown scheme '{name}'. Allowed: {', '.join(SCHEME_NAMES)}"
    return True, None


def validate_grid(text: str) -> Tuple[bool, Optional[str]]:
    """'auto' or a positive integer M"""
    if text == 'auto':
        return True, None
    if not text.isdigit() or int(text) < 1:
        return False, f"grid must be 'auto' or a positive integer, got '{text}'"
    return True, None


def validate_format(fmt: str) -> Tuple[bool, Optional[str]]:
    if fmt not in OUTPUT_FORMATS:
        return False, f"unknown format '{fmt}'. Allowed: {', '.join(OUTPUT_FORMATS)}"
    return True, None


def validate_point(text: str, dim: int) -> Tuple[bool, Optional[str]]:
    """Comma-separated coordinates of the expected length"""
    try:
        values = [float(v) for v in text.split(',')]
    except ValueError:
        return False, f"point '{text}' is not a comma-separated list of numbers"
    if len(values) != dim:
        return False, f"point '{text}' has {len(values)} coordinates, expected {dim}"
    return True, None
