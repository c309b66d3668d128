"""
Base Configuration
"""

import os
from pathlib import Path


class Config:
    """Base configuration"""

    # Paths
    BASE_DIR = Path(__file__).parent.parent.parent
    # Allow overriding the log folder via environment variable (empty disables file logs)
    env_log_dir = os.environ.get('WALDRON_LOG_DIR', '')
    if env_log_dir:
        env_path = Path(env_log_dir)
        LOG_DIR = (BASE_DIR / env_path).resolve() if not env_path.is_absolute() else env_path
    else:
        LOG_DIR = None

    # Logging; DEBUG attaches tracebacks to computation errors
    DEBUG = False
    LOG_LEVEL = 'INFO'

    # Weight functions
    EVAL_TOL = 1e-14
    INVERSE_MAX_ITER = 60
    DENSITY_QUAD_TOL = 1e-12
    DENSITY_SPLINE_NODES = 4097
    DENSITY_NORMALIZATION_TOL = 1e-8

    # Geometry
    BARYCENTRIC_TOL = 1e-12
    DEGENERACY_TOL = 1e-12

    # Baryweight chart
    ROOT_TOL = 1e-15
    ROOT_MAX_ITER = 60
    IMAGE_TOL = 1e-12

    # Interpolation
    CONDITION_LIMIT = 1e12
    POLE_TOL = 1e-12

    # Node generation
    DEDUP_TOL = 1e-9
    RADII_MAX_ITER = 4000
    RADII_BARRIER = 1e-10
    RADII_XATOL = 1e-10
    # relative to |objective| at the start
    RADII_FRTOL = 1e-13

    # Lebesgue grids: M = max(per_degree * n, minimum)
    GRID_PER_DEGREE = {2: 50, 3: 15}
    GRID_MINIMUM = {2: 400, 3: 120}
    GRID_STABILITY = 0.005
    MAX_GRID_DOUBLINGS = int(os.environ.get('WALDRON_MAX_GRID_DOUBLINGS', '3'))
    GRID_CHUNK = int(os.environ.get('WALDRON_GRID_CHUNK', '20000'))

    # Worker threads for grid evaluation
    THREADS = int(os.environ.get('WALDRON_THREADS', '0')) or (os.cpu_count() or 1)

    # Output
    CSV_DIGITS = 17
