"""
Exception hierarchy.

Verification failures are reported as values; these exceptions signal
malformed input, unmet preconditions or a broken pipeline invariant.
"""

from typing import Optional


class PdsCertError(Exception):
    """Base class for all pdscert errors."""


class StructuralError(PdsCertError, ValueError):
    """Input does not have the shape an operation needs."""


class NotationError(StructuralError):
    """A group or element literal could not be parsed."""


class EmptySylowError(StructuralError):
    """The prime does not divide the group order."""


class UnsupportedStructureError(StructuralError):
    """The Sylow part is not elementary Abelian (or too small)."""


class PreconditionError(PdsCertError, ValueError):
    """A documented precondition was checked and failed."""


class InapplicableError(PdsCertError):
    """A theorem's hypotheses are not met for the given input."""

    def __init__(self, condition: str):
        super().__init__(f"not applicable: {condition}")
        self.condition = condition


class IntegrityError(PdsCertError, RuntimeError):
    """A pipeline invariant was broken."""

    def __init__(self, message: str, stage: Optional[str] = None):
        super().__init__(f"[{stage}] {message}" if stage else message)
        self.stage = stage
        self.detail = message
