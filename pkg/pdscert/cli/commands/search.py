"""
search GROUP PARAMS

Writes every regular PDS found as one JSON set-file document per line.
"""

import argparse

from pdscert.analysis.pds import PdsParams
from pdscert.analysis.search import SearchOptions, search_pds
from pdscert.cli.common import (
    EXIT_INCONCLUSIVE,
    EXIT_OK,
    EXIT_USAGE,
    add_jobs_argument,
    add_out_argument,
    emit,
    report_error,
)
from pdscert.config import get_settings
from pdscert.core.groups import GroupSpec
from pdscert.errors import PdsCertError
from pdscert.models.schemas import SearchHitDocument


def register(subparsers) -> None:
    parser = subparsers.add_parser("search", help="Search a group for regular PDS")
    parser.add_argument("group", help="Group notation, e.g. Z3^2")
    parser.add_argument("params", help="v,k,lambda,mu")
    parser.add_argument("--timeout", type=float, default=None, help="Time limit in seconds")
    parser.add_argument("--limit", type=int, default=None, help="Stop after this many sets")
    parser.add_argument("--exclude-trivial", action="store_true", help="Skip trivial sets")
    add_out_argument(parser)
    add_jobs_argument(parser)
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    settings = get_settings()
    if args.limit is not None and args.limit < 0:
        report_error(f"--limit must be nonnegative, got {args.limit}")
        return EXIT_USAGE
    options = SearchOptions(
        timeout=args.timeout if args.timeout is not None else settings.search_timeout,
        jobs=args.jobs if args.jobs is not None else settings.jobs,
        include_trivial=not args.exclude_trivial,
        limit=args.limit,
    )
    try:
        group = GroupSpec.parse(args.group)
        params = PdsParams.parse(args.params)
        result = search_pds(group, params, options)
    except PdsCertError as e:
        report_error(str(e))
        return EXIT_USAGE

    lines = [
        SearchHitDocument(
            group=group.notation,
            elements=hit.candidate.as_lists(),
            params=params.notation,
            trivial=hit.trivial,
        ).model_dump_json() + "\n"
        for hit in result.hits
    ]
    if emit("".join(lines), args.out):
        return EXIT_USAGE
    if not result.complete:
        report_error("time limit reached; results are partial")
        return EXIT_INCONCLUSIVE
    return EXIT_OK
