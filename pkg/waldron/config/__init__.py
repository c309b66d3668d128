"""
Waldron Configuration Package
"""

import os

from waldron.config.config import Config
from waldron.config.development import DevelopmentConfig
from waldron.config.production import ProductionConfig

CONFIGS = {
    'development': DevelopmentConfig,
    'production': ProductionConfig,
}


def get_config(config_name: str = None):
    """Resolve a configuration class by name, falling back to WALDRON_ENV"""
    name = config_name or os.environ.get('WALDRON_ENV', 'development')
    if name not in CONFIGS:
        raise ValueError(f"Unknown configuration '{name}'. Expected one of: {', '.join(CONFIGS)}")
    return CONFIGS[name]


__all__ = ['Config', 'DevelopmentConfig', 'ProductionConfig', 'CONFIGS', 'get_config']
