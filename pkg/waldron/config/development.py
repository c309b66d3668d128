"""
Development Configuration
"""

from waldron.config.config import Config


class DevelopmentConfig(Config):
    """Development environment configuration"""

    DEBUG = True

    # More verbose logging in development
    LOG_LEVEL = 'DEBUG'
