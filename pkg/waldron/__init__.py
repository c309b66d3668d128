"""
Waldron Interpolation Toolkit
Weighted barycentric node families on simplices, their cardinal functions,
Lebesgue constants and spacing analysis.
"""

from pathlib import Path

from dotenv import load_dotenv

# Config classes read the environment at import time
load_dotenv(dotenv_path=Path(__file__).parent.parent / '.env')

from waldron.config import get_config  # noqa: E402
from waldron.config.logging_config import configure_cli_logging, setup_quiet_warnings  # noqa: E402
from waldron.models.simplex import Simplex, baran_distance, sphere_lift  # noqa: E402
from waldron.models.weights import (  # noqa: E402
    ConvexWeight,
    CosineWeight,
    Density,
    DensityWeight,
    IdentityWeight,
    QuadraticWeight,
    Weight,
    weight_from_spec,
)
from waldron.services.analysis import lebesgue_constant, spacing_D  # noqa: E402
from waldron.services.baryweights import BaryweightChart, sum_bounds_check  # noqa: E402
from waldron.services.interp import Interpolant, InterpolationScheme  # noqa: E402
from waldron.services.points import (  # noqa: E402
    concentric_points,
    enumerate_indices,
    simplex_points,
    waldron_points,
    waldron_points_modified_3d,
)

__version__ = '1.0.0'

setup_quiet_warnings()


def create_context(config_name=None, log_level=None):
    """
    Resolve configuration and wire logging for a run

    Args:
        config_name: development/production (default: WALDRON_ENV)
        log_level: Overrides the configuration's LOG_LEVEL

    Returns:
        The selected configuration class
    """
    config = get_config(config_name)
    logger = configure_cli_logging(log_level or config.LOG_LEVEL, config.LOG_DIR)
    logger.debug(f"Configuration '{config.__name__}' loaded")
    return config


__all__ = [
    'BaryweightChart',
    'ConvexWeight',
    'CosineWeight',
    'Density',
    'DensityWeight',
    'IdentityWeight',
    'Interpolant',
    'InterpolationScheme',
    'QuadraticWeight',
    'Simplex',
    'Weight',
    'baran_distance',
    'concentric_points',
    'create_context',
    'enumerate_indices',
    'lebesgue_constant',
    'simplex_points',
    'spacing_D',
    'sphere_lift',
    'sum_bounds_check',
    'waldron_points',
    'waldron_points_modified_3d',
    'weight_from_spec',
]
