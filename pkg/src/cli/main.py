"""
Command-line entry point.

    run_solver.py sweep --config config/runs/barrier_sweep.yaml --junctions 6
    run_solver.py bound --config config/runs/well_bound.yaml --oracle --format json

Exit codes: 0 success, 2 configuration error, 3 numerical failure.
"""

import sys
import logging
import argparse
from typing import Any, Dict, List, Optional

from ..errors import ConfigError, ConfigurationError, SolverError
from .commands import COMMANDS
from .config import FORMAT_CHOICES, load_run_config, parse_override
from .report import write_report
from .settings import load_settings, setup_logging

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--config', help='Flat YAML run file')
    common.add_argument('--settings', help='Settings file (default: config/config.yaml)')
    common.add_argument('--out', help='Output path (stdout when omitted)')
    common.add_argument('--format', choices=FORMAT_CHOICES, help='Output format')
    common.add_argument('--junctions', type=int, help='Number of ultra-short junctions')
    common.add_argument('--delta-x', type=float, help='Junction half-width')
    common.add_argument('--level', type=int, help='Eigenfunction level (0-based)')
    common.add_argument('--oracle', action='store_true', default=None,
                        help='Add finite-difference reference eigenvalues')
    common.add_argument('--set', action='append', default=[], metavar='KEY=VALUE',
                        help='Override any run-file key (repeatable)')

    parser = argparse.ArgumentParser(
        prog='run_solver',
        description='Ultra-short potential transfer-matrix solver',
    )
    subparsers = parser.add_subparsers(dest='command', required=True)
    for name, func in COMMANDS.items():
        subparsers.add_parser(name, parents=[common], help=func.__doc__)

    return parser


def collect_overrides(args: argparse.Namespace) -> Dict[str, Any]:
    """Run-file overrides from dedicated flags and --set, in that order."""
    overrides: Dict[str, Any] = {}
    for text in args.set:
        key, value = parse_override(text)
        overrides[key] = value

    flags = {
        'junctions': args.junctions,
        'delta_x': args.delta_x,
        'output': args.out,
        'format': args.format,
        'level': args.level,
        'oracle': args.oracle,
    }
    overrides.update({key: value for key, value in flags.items() if value is not None})
    return overrides


def main(argv: Optional[List[str]] = None) -> int:
    """Parse arguments, run one subcommand and write its report."""
    args = build_parser().parse_args(argv)

    settings = load_settings(args.settings)
    setup_logging(settings)

    try:
        config = load_run_config(args.config, collect_overrides(args), settings.get('solver'))
    except ConfigError as e:
        logging.error(f"Configuration error: {e}")
        return EXIT_CONFIG

    logging.info(f"Running '{args.command}'")

    try:
        report = COMMANDS[args.command](config)
    except (ConfigError, ConfigurationError) as e:
        logging.error(f"Configuration error: {e}")
        return EXIT_CONFIG
    except SolverError as e:
        logging.error(f"Numerical failure: {e}")
        return EXIT_NUMERICAL

    try:
        write_report(report, config.output, config.format)
    except OSError as e:
        logging.error(f"Cannot write output: {e}")
        return EXIT_CONFIG

    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
