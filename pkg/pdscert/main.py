"""
pdscert

Command-line entry point: verification, search and nonexistence
certificates for partial difference sets in Abelian groups.
"""

import argparse
import logging
import sys
from typing import Optional, Sequence

from pdscert import __version__
from pdscert.cli.commands import certify, plane, search, solve_c, verify
from pdscert.config import get_settings

_handler: Optional[logging.Handler] = None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pdscert",
        description="Partial difference sets: verify, search and certify nonexistence",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument(
        "-v", "--verbose", action="count", default=0,
        help="More log output on stderr (-v info, -vv debug)",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command in (verify, certify, solve_c, plane, search):
        command.register(subparsers)
    return parser


def configure_logging(verbosity: int) -> None:
    """Attach one stderr handler to the ``pdscert`` logger."""
    global _handler
    settings = get_settings()
    if verbosity >= 2:
        level = logging.DEBUG
    elif verbosity == 1:
        level = logging.INFO
    else:
        level = logging.getLevelName(settings.log_level.upper())
        if not isinstance(level, int):
            level = logging.WARNING

    root = logging.getLogger("pdscert")
    if _handler is not None:
        root.removeHandler(_handler)
    _handler = logging.StreamHandler(sys.stderr)
    _handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
    root.addHandler(_handler)
    root.setLevel(level)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.verbose)
    return args.handler(args)


if __name__ == "__main__":
    sys.exit(main())
