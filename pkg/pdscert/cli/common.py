"""
Shared CLI plumbing: exit codes, output and error reporting.
"""

import sys
from pathlib import Path
from typing import Optional

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_INCONCLUSIVE = 3
EXIT_INTEGRITY = 4


def write_output(text: str, out: Optional[Path]) -> None:
    """Write to ``out`` when given, else standard output."""
    if out is None:
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        out.write_text(text, encoding="utf-8")


def emit(text: str, out: Optional[Path]) -> int:
    """``write_output``, reporting an unwritable ``out`` as a usage error."""
    try:
        write_output(text, out)
    except OSError as e:
        report_error(f"cannot write {out}: {e.strerror or e}")
        return EXIT_USAGE
    return EXIT_OK


def report_error(message: str) -> None:
    print(f"error: {message}", file=sys.stderr)


def add_out_argument(parser) -> None:
    parser.add_argument("--out", type=Path, default=None, help="Output file (default: stdout)")


def add_jobs_argument(parser) -> None:
    parser.add_argument(
        "--jobs", type=int, default=None,
        help="Worker processes (default: PDSCERT_JOBS or 1)",
    )
