"""
Waldron - Centralized Logging Configuration
Quietens third-party loggers and wires CLI handlers
"""

import logging
import warnings
from pathlib import Path
from typing import Optional, Union

DETAILED_FORMAT = '[%(asctime)s] %(levelname)s in %(name)s: %(message)s'
ERROR_FORMAT = '[%(asctime)s] %(levelname)s in %(name)s [%(pathname)s:%(lineno)d]: %(message)s'


def setup_quiet_warnings():
    """Suppress noisy third-party output for batch runs"""
    warnings.filterwarnings('ignore', category=DeprecationWarning)
    warnings.filterwarnings('ignore', category=FutureWarning)

    # Pillow logs every plugin import at DEBUG
    logging.getLogger('PIL').setLevel(logging.WARNING)


def configure_cli_logging(log_level: Union[int, str] = logging.INFO,
                          log_dir: Optional[Path] = None) -> logging.Logger:
    """
    Configure the package logger for command-line runs

    Args:
        log_level: Logging level for the package logger
        log_dir: Directory for app.log / error.log (None: stderr only)

    Returns:
        The configured 'waldron' logger
    """
    if isinstance(log_level, str):
        log_level = getattr(logging, log_level.upper(), logging.INFO)

    logger = logging.getLogger('waldron')
    logger.handlers.clear()
    logger.setLevel(log_level)
    logger.propagate = False

    console_handler = logging.StreamHandler()
    console_handler.setLevel(log_level)
    console_handler.setFormatter(logging.Formatter(DETAILED_FORMAT))
    logger.addHandler(console_handler)

    if log_dir is not None:
        log_dir = Path(log_dir)
        log_dir.mkdir(parents=True, exist_ok=True)

        # File handler for general logs
        file_handler = logging.FileHandler(log_dir / 'app.log')
        file_handler.setLevel(log_level)
        file_handler.setFormatter(logging.Formatter(DETAILED_FORMAT))

        # File handler for errors only
        error_handler = logging.FileHandler(log_dir / 'error.log')
        error_handler.setLevel(logging.ERROR)
        error_handler.setFormatter(logging.Formatter(ERROR_FORMAT))

        logger.addHandler(file_handler)
        logger.addHandler(error_handler)

    return logger
