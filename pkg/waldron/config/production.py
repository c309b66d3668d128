"""
Production Configuration
"""

import os

from waldron.config.config import Config


class ProductionConfig(Config):
    """Batch/benchmark runs: quiet logs, full grid refinement"""

    DEBUG = False

    # Production logging
    LOG_LEVEL = 'WARNING'

    MAX_GRID_DOUBLINGS = int(os.environ.get('WALDRON_MAX_GRID_DOUBLINGS', '4'))
