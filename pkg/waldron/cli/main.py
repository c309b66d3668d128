"""
Command-Line Entry Point
Builds the parser, validates arguments and dispatches to subcommands.

Exit codes: 0 success, 2 usage error, 1 computation error.
"""

import argparse
import logging
import sys
from typing import List, Optional

from waldron import create_context
from waldron.cli import benchmark, generate, interpolation
from waldron.cli.common import EXIT_COMPUTATION, EXIT_USAGE
from waldron.config import CONFIGS
from waldron.utils.errors import WaldronError

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='waldron',
        description='Waldron interpolation points on simplices: generation, interpolation, '
                    'Lebesgue constants and spacing analysis',
    )
    parser.add_argument('--env', choices=sorted(CONFIGS), default=None,
                        help='Configuration (default: WALDRON_ENV or development)')
    parser.add_argument('--log-level', default=None,
                        choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'],
                        help='Override the configured log level')
    parser.add_argument('--threads', type=int, default=None,
                        help='Worker threads for grid evaluation (default: WALDRON_THREADS or CPU count)')
    parser.add_argument('--seed', type=int, default=0,
                        help='Seed for randomized evaluation points')

    subparsers = parser.add_subparsers(dest='command', metavar='<command>')
    subparsers.required = True
    generate.register(subparsers)
    interpolation.register(subparsers)
    benchmark.register(subparsers)
    return parser


def run(argv: Optional[List[str]] = None) -> int:
    """
    Parse argv, run one subcommand and return the exit code

    Usage errors (argparse and validators) give 2; any WaldronError raised
    by the computation is logged and gives 1.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    if args.threads is not None and args.threads < 1:
        print(f"{parser.prog}: error: --threads: must be >= 1, got {args.threads}", file=sys.stderr)
        return EXIT_USAGE

    config = create_context(args.env, args.log_level)
    args.config = config
    args.threads = args.threads or config.THREADS

    try:
        args.validate(args)
        return args.handler(args)
    except SystemExit as exc:
        return int(exc.code or 0)
    except WaldronError as e:
        logger.error(f"❌ {type(e).__name__}: {e}", exc_info=config.DEBUG)
        return EXIT_COMPUTATION


def main():
    sys.exit(run())


if __name__ == '__main__':
    main()
