"""
Entry Point
"""

import sys

from waldron.cli.main import run

if __name__ == '__main__':
    sys.exit(run())
