"""
Shared argument helpers for the subcommands
"""

import argparse
import sys
from typing import List, Optional, Tuple

import numpy as np

from waldron.utils.constants import OUTPUT_FORMATS
from waldron.utils.validators import validate_format

EXIT_OK = 0
EXIT_COMPUTATION = 1
EXIT_USAGE = 2


def require(args: argparse.Namespace, flag: str, result: Tuple[bool, Optional[str]]):
    """Turn a validator result into a usage error naming the flag (exit 2)"""
    is_valid, error_message = result
    if not is_valid:
        args.parser.error(f"{flag}: {error_message}")


def add_output_arguments(sub: argparse.ArgumentParser, default_format: str = 'csv'):
    sub.add_argument('-o', '--output', default=None,
                     help="Output file (default: stdout)")
    sub.add_argument('--format', default=default_format, choices=OUTPUT_FORMATS,
                     help='Output format')


def check_output_arguments(args: argparse.Namespace):
    require(args, '--format', validate_format(args.format))


def print_summary(args: argparse.Namespace, text: str):
    """Human-readable summary, on stdout unless stdout carries the results"""
    to_stdout = args.output is not None and args.output != '-'
    print(text, file=sys.stdout if to_stdout else sys.stderr)


def numbered(prefix: str, count: int) -> List[str]:
    """Column names prefix_1 .. prefix_count"""
    return [f"{prefix}_{i}" for i in range(1, count + 1)]


def parse_vector(text: str) -> np.ndarray:
    return np.array([float(v) for v in text.split(',')])


def default_simplex_name(dim: int) -> str:
    return 'equilateral2d' if dim == 2 else 'centred3d' if dim == 3 else f'unit{dim}'
