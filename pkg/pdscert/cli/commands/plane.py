"""
plane GROUP

Prints the 13 blocks of the subgroup plane, 4 point indices each.
"""

import argparse

from pdscert.cli.common import (
    EXIT_INTEGRITY,
    EXIT_OK,
    EXIT_USAGE,
    add_jobs_argument,
    add_out_argument,
    emit,
    report_error,
)
from pdscert.core.designs import build_plane, format_plane
from pdscert.core.groups import GroupSpec
from pdscert.errors import IntegrityError, PdsCertError


def register(subparsers) -> None:
    parser = subparsers.add_parser("plane", help="Export the 2-(13,4,1) plane of a group")
    parser.add_argument("group", help="Group notation, e.g. Z2^3xZ3^3")
    add_out_argument(parser)
    add_jobs_argument(parser)
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    try:
        plane = build_plane(GroupSpec.parse(args.group))
    except IntegrityError as e:
        report_error(f"integrity failure in stage {e.stage or 'unknown'}: {e.detail}")
        return EXIT_INTEGRITY
    except PdsCertError as e:
        report_error(str(e))
        return EXIT_USAGE
    if emit(format_plane(plane), args.out):
        return EXIT_USAGE
    return EXIT_OK
