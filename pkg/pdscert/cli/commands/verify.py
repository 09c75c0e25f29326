"""
verify GROUP SETFILE PARAMS

Checks a set file against PDS parameters and prints one line per check.
"""

import argparse
import logging

from pydantic import ValidationError

from pdscert.analysis.pds import (
    CandidateSet,
    PdsParams,
    is_regular,
    is_trivial,
    lmt_closed,
    verify_pds,
)
from pdscert.cli.common import (
    EXIT_FAIL,
    EXIT_OK,
    EXIT_USAGE,
    add_jobs_argument,
    add_out_argument,
    emit,
    report_error,
)
from pdscert.core.groups import GroupSpec
from pdscert.errors import PdsCertError, StructuralError
from pdscert.models.schemas import SetFileDocument

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("verify", help="Verify a candidate set against (v,k,lambda,mu)")
    parser.add_argument("group", help="Group notation, e.g. Z3^2")
    parser.add_argument("setfile", help="JSON set file")
    parser.add_argument("params", help="v,k,lambda,mu")
    add_out_argument(parser)
    add_jobs_argument(parser)
    parser.set_defaults(handler=run)


def load_candidate(group: GroupSpec, path: str) -> CandidateSet:
    """Read a set file and check that it belongs to ``group``. Elements may be vectors or literals."""
    with open(path, encoding="utf-8") as f:
        doc = SetFileDocument.model_validate_json(f.read())
    declared = GroupSpec.parse(doc.group)
    if declared != group:
        raise StructuralError(f"set file is over {declared.notation}, not {group.notation}")
    elements = [group.parse_element(e) if isinstance(e, str) else e for e in doc.elements]
    return CandidateSet.of(group, elements)


def _mark(ok: bool) -> str:
    return "✓" if ok else "✗"


def run(args: argparse.Namespace) -> int:
    try:
        group = GroupSpec.parse(args.group)
        params = PdsParams.parse(args.params)
        candidate = load_candidate(group, args.setfile)
    except OSError as e:
        report_error(f"cannot read {args.setfile}: {e.strerror or e}")
        return EXIT_USAGE
    except UnicodeDecodeError as e:
        report_error(f"cannot read {args.setfile}: not UTF-8 ({e.reason} at byte {e.start})")
        return EXIT_USAGE
    except ValidationError as e:
        report_error(f"malformed set file {args.setfile}: {e}")
        return EXIT_USAGE
    except PdsCertError as e:
        report_error(str(e))
        return EXIT_USAGE

    report = verify_pds(candidate, params)
    lines = [f"{'PASS' if report.passed else 'FAIL'} {params} in {group.notation}"]
    lines += [f"{_mark(c.passed)} {c.name}: {c.detail}" for c in report.checks]
    if report.passed:
        lines.append(f"{_mark(is_regular(candidate))} regular")
        lines.append(f"{_mark(not is_trivial(candidate))} nontrivial")
        lines.append(f"{_mark(lmt_closed(candidate))} multiplier-closed")
    if emit("\n".join(lines) + "\n", args.out):
        return EXIT_USAGE
    logger.info("verify %s: %s", params, "pass" if report.passed else report.reason)
    return EXIT_OK if report.passed else EXIT_FAIL
