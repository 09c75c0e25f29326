"""
certify PARAMS

Runs the nonexistence pipeline and writes the certificate as JSON.
"""

import argparse

from pdscert.analysis.certificate import Verdict, certificate_document, certify
from pdscert.analysis.pds import PdsParams
from pdscert.cli.common import (
    EXIT_INCONCLUSIVE,
    EXIT_INTEGRITY,
    EXIT_OK,
    EXIT_USAGE,
    add_jobs_argument,
    add_out_argument,
    emit,
    report_error,
)
from pdscert.config import get_settings
from pdscert.errors import IntegrityError, PdsCertError


def register(subparsers) -> None:
    parser = subparsers.add_parser("certify", help="Certify nonexistence of a (v,k,lambda,mu)-PDS")
    parser.add_argument("params", help="v,k,lambda,mu")
    add_out_argument(parser)
    add_jobs_argument(parser)
    parser.add_argument(
        "--prune-automorphisms", action="store_true", default=None,
        help="Search only placements with a largest weight on point 0",
    )
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    settings = get_settings()
    jobs = args.jobs if args.jobs is not None else settings.jobs
    prune = args.prune_automorphisms if args.prune_automorphisms is not None else settings.prune_automorphisms
    try:
        params = PdsParams.parse(args.params)
    except PdsCertError as e:
        report_error(str(e))
        return EXIT_USAGE

    try:
        cert = certify(params, jobs=jobs, prune_automorphisms=prune)
    except IntegrityError as e:
        report_error(f"integrity failure in stage {e.stage or 'unknown'}: {e.detail}")
        return EXIT_INTEGRITY
    except PdsCertError as e:
        report_error(str(e))
        return EXIT_USAGE

    document = certificate_document(cert)
    if emit(document.model_dump_json(indent=settings.certificate_indent, by_alias=True) + "\n", args.out):
        return EXIT_USAGE
    return EXIT_OK if cert.overall == Verdict.NONEXISTENT else EXIT_INCONCLUSIVE
