"""
Pydantic Schemas

Documents read and written by the command line: set files, certificates
and search hits. Field order is declaration order, so JSON output is stable.
"""

from pydantic import BaseModel, ConfigDict, Field
from typing import Any, Optional, Union
from enum import Enum


# ============= Enums =============

class VerdictEnum(str, Enum):
    NONEXISTENT = "NONEXISTENT"
    INCONCLUSIVE = "INCONCLUSIVE"


class StageVerdictEnum(str, Enum):
    PASS = "pass"
    UNMET = "unmet"
    CLOSED = "closed"
    OPEN = "open"


# ============= Input Documents =============

class SetFileDocument(BaseModel):
    """A candidate set: group notation plus element exponent vectors."""
    model_config = ConfigDict(extra="ignore")

    group: str = Field(..., description="Group notation, e.g. Z2^3xZ3^3")
    elements: list[Union[list[int], str]] = Field(
        ..., description="Exponent vectors or literals like \"(1,0)\" in canonical factor order"
    )


# ============= Output Documents =============

class SearchHitDocument(SetFileDocument):
    """One set found by search; readable as a set file."""
    params: str = Field(..., description="v,k,lambda,mu")
    trivial: bool = Field(..., description="D u {e} or G minus D is a subgroup")


class ParamsDocument(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    v: int
    k: int
    lam: int = Field(..., alias="lambda")
    mu: int


class StageRecordDocument(BaseModel):
    """One pipeline stage."""
    name: str
    inputs: dict[str, Any] = Field(default_factory=dict)
    outputs: dict[str, Any] = Field(default_factory=dict)
    verdict: StageVerdictEnum


class CaseBranchDocument(BaseModel):
    """Summary of one |N meet D| case."""
    n2: int
    sum: int
    sum_of_squares: int
    m_prime: list[int]
    multisets: int
    parity_excluded: int
    closed: bool


class CertificateDocument(BaseModel):
    """A replayable record of the staged nonexistence argument."""
    params: ParamsDocument
    group: Optional[str] = None
    stages: list[StageRecordDocument] = Field(default_factory=list)
    branches: list[CaseBranchDocument] = Field(default_factory=list)
    overall: VerdictEnum
