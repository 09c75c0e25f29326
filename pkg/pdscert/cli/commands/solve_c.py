"""
solve-c SUM SUMSQ LENGTH

Prints every nonincreasing solution, one comma-joined tuple per line.
"""

import argparse

from pdscert.cli.common import EXIT_OK, EXIT_USAGE, add_jobs_argument, add_out_argument, emit, report_error
from pdscert.core.diophantine import CSystem, enumerate_solutions


def register(subparsers) -> None:
    parser = subparsers.add_parser("solve-c", help="Solve sum(C) = SUM, sum(C^2) = SUMSQ over LENGTH entries")
    parser.add_argument("total", type=int, metavar="SUM")
    parser.add_argument("square_total", type=int, metavar="SUMSQ")
    parser.add_argument("length", type=int, metavar="LENGTH")
    add_out_argument(parser)
    add_jobs_argument(parser)
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    try:
        system = CSystem(length=args.length, total=args.total, square_total=args.square_total)
    except ValueError as e:
        report_error(str(e))
        return EXIT_USAGE
    solutions = enumerate_solutions(system)
    if emit("".join(",".join(str(c) for c in s) + "\n" for s in solutions), args.out):
        return EXIT_USAGE
    return EXIT_OK
