"""Shared fixtures."""

import json

import pytest

from pdscert.analysis.pds import CandidateSet, PdsParams
from pdscert.core.designs import build_plane
from pdscert.core.groups import GroupSpec

from tests.cases import PALEY_9


@pytest.fixture(scope="session")
def g216() -> GroupSpec:
    return GroupSpec.parse("Z2^3xZ3^3")


@pytest.fixture(scope="session")
def plane216(g216):
    return build_plane(g216)


@pytest.fixture
def z3sq() -> GroupSpec:
    return GroupSpec.parse("Z3^2")


@pytest.fixture
def paley9(z3sq) -> CandidateSet:
    return CandidateSet.of(z3sq, PALEY_9)


@pytest.fixture
def params_40() -> PdsParams:
    return PdsParams(216, 40, 4, 8)


@pytest.fixture
def params_43() -> PdsParams:
    return PdsParams(216, 43, 10, 8)


@pytest.fixture
def paley_setfile(tmp_path):
    path = tmp_path / "paley9.json"
    path.write_text(json.dumps({"group": "Z3^2", "elements": [list(e) for e in PALEY_9]}))
    return path
