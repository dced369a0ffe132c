# main.py
# Command-line entry point: argument parsing, logging setup, subcommand dispatch

import argparse
import logging
import sys

from .errors import KrigmorphError
from .routes import SUBCOMMANDS
from .services.settings import LOG_LEVELS, get_log_level

PROG = "krigmorph"

_LEVELS = {
    "error": logging.ERROR,
    "warn": logging.WARNING,
    "info": logging.INFO,
    "debug": logging.DEBUG,
}


def build_parser():
    parser = argparse.ArgumentParser(
        prog=PROG,
        description="Kriging-based morphing parametrization of surface and volume meshes",
    )
    parser.add_argument(
        "--log-level", choices=LOG_LEVELS,
        help="diagnostics on standard error (default KRIGMORPH_LOG_LEVEL or warn)",
    )
    subparsers = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    for module in SUBCOMMANDS:
        module.register(subparsers)
    return parser


def configure_logging(level_name):
    logging.basicConfig(
        level=_LEVELS[level_name],
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
        force=True,
    )


def main(argv=None):
    """Run one subcommand; returns the process exit code (0, 2, 3 or 4)."""
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        configure_logging(args.log_level or get_log_level())
        args.validate(args)
        return args.handler(args)
    except KrigmorphError as e:
        print(f"{PROG} {args.command}: error: {e}", file=sys.stderr)
        return e.exit_code
