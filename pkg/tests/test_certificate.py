"""Tests for the nonexistence certificate pipeline."""

import json

import pytest

from pdscert.analysis.certificate import (
    StageVerdict,
    Verdict,
    allowed_line_weights,
    c_system_targets,
    certificate_document,
    certify,
    fiber_pairing,
    get_certificate_pipeline,
    group_identification,
    line_content_options,
)
from pdscert.analysis.pds import PdsParams
from pdscert.core.groups import GroupSpec
from pdscert.errors import IntegrityError
from tests.cases import SOLUTIONS_18_32, SOLUTIONS_20_48

EVEN_CANDIDATE = (4, 2, 2, 2, 2, 2, 2, 2, 2, 0, 0, 0, 0)


@pytest.fixture(scope="module")
def cert_40():
    return certify(PdsParams(216, 40, 4, 8))


@pytest.fixture(scope="module")
def cert_43():
    return certify(PdsParams(216, 43, 10, 8))


# ============= Stage operations =============

def test_group_identification():
    ident = group_identification(216)
    assert ident.survivor == GroupSpec.parse("Z2^3xZ3^3")
    assert len(ident.verdicts) == 9


def test_group_identification_without_survivor():
    with pytest.raises(IntegrityError) as info:
        group_identification(12)
    assert info.value.stage == "group_identification"


@pytest.mark.parametrize("k,lam,mu,n2,targets", [
    (40, 4, 8, 0, (20, 48)),
    (40, 4, 8, 4, (18, 32)),
    (43, 10, 8, 3, (20, 48)),
    (43, 10, 8, 7, (18, 32)),
])
def test_c_system_targets(k, lam, mu, n2, targets):
    system = c_system_targets(PdsParams(216, k, lam, mu), n2)
    assert (system.total, system.square_total) == targets
    assert system.length == 13


def test_c_system_targets_odd_remainder(params_40):
    with pytest.raises(IntegrityError) as info:
        c_system_targets(params_40, 3)
    assert info.value.stage == "c_system_targets"


def test_line_content_options(params_40, params_43):
    assert line_content_options(params_40, 72) == (8, 16)
    assert line_content_options(params_43, 72) == (11, 19)


@pytest.mark.parametrize("m_options,n2,expected", [
    ((8, 16), 0, (4, 8)),
    ((8, 16), 4, (2, 6)),
    ((11, 19), 3, (4, 8)),
    ((11, 19), 7, (2, 6)),
])
def test_allowed_line_weights(m_options, n2, expected):
    assert allowed_line_weights(m_options, n2) == expected


def test_allowed_line_weights_parity():
    with pytest.raises(IntegrityError):
        allowed_line_weights((8, 16), 3)
    with pytest.raises(IntegrityError):
        allowed_line_weights((2,), 4)


def test_fiber_pairing(g216):
    pairing = fiber_pairing(g216)
    assert pairing["order3_elements"] == 26
    assert pairing["fiber_size"] == 8
    assert pairing["c_values"] == 13


# ============= (216,40,4,8) =============

def test_certify_216_40(cert_40):
    assert cert_40.overall == Verdict.NONEXISTENT
    assert cert_40.group == GroupSpec.parse("Z2^3xZ3^3")
    assert cert_40.stage("parameters").outputs["delta"] == 144
    assert cert_40.stage("subgroup_intersection").outputs["candidate_sizes"] == [0, 4]
    assert cert_40.stage("line_content").outputs["m"] == [8, 16]
    assert cert_40.stage("plane").outputs["isomorphic_to_pg23"]
    excluded = cert_40.stage("group_identification").outputs["excluded"]
    assert excluded == 8


def test_certify_216_40_branches(cert_40):
    first, second = cert_40.branches
    assert (first.n2, second.n2) == (0, 4)
    assert (first.system.total, first.system.square_total) == (20, 48)
    assert (second.system.total, second.system.square_total) == (18, 32)
    assert first.multisets == SOLUTIONS_20_48
    assert second.multisets == SOLUTIONS_18_32
    assert first.allowed == (4, 8)
    assert second.allowed == (2, 6)
    assert first.survivors_after_parity == [EVEN_CANDIDATE]
    assert second.survivors_after_parity == []
    assert all(branch.closed for branch in cert_40.branches)


def test_even_candidate_closed_by_search(cert_40):
    outcome = next(o for o in cert_40.branches[0].outcomes if o.multiset == EVEN_CANDIDATE)
    assert outcome.excluded_by == ["search"]
    others = [o for b in cert_40.branches for o in b.outcomes if o.multiset != EVEN_CANDIDATE]
    assert all(o.excluded_by == ["parity", "search"] for o in others)


# ============= (216,43,10,8) =============

def test_certify_216_43(cert_43):
    assert cert_43.overall == Verdict.NONEXISTENT
    assert cert_43.stage("subgroup_intersection").outputs["candidate_sizes"] == [3, 7]
    assert cert_43.stage("line_content").outputs["m"] == [11, 19]
    assert [b.n2 for b in cert_43.branches] == [3, 7]
    assert [b.allowed for b in cert_43.branches] == [(4, 8), (2, 6)]
    assert cert_43.branches[0].multisets == SOLUTIONS_20_48
    assert cert_43.branches[1].multisets == SOLUTIONS_18_32


def test_shared_stages_agree(cert_40, cert_43):
    for name in ("group_identification", "preconditions", "fiber_pairing", "plane"):
        assert cert_40.stage(name).outputs == cert_43.stage(name).outputs


# ============= Inconclusive runs =============

def test_delta_is_computed():
    cert = certify(PdsParams(216, 41, 4, 8))
    assert cert.stage("parameters").outputs["delta"] == 148
    assert cert.stage("preconditions").verdict == StageVerdict.UNMET
    assert cert.overall == Verdict.INCONCLUSIVE
    assert cert.branches == []


def test_small_group_is_inconclusive():
    cert = certify(PdsParams(9, 4, 1, 2))
    assert cert.group == GroupSpec.parse("Z3^2")
    assert cert.stage("preconditions").outputs["sylow3_elementary_rank3"] is False
    assert cert.overall == Verdict.INCONCLUSIVE


# ============= Documents =============

def test_certificate_document(cert_40):
    document = json.loads(certificate_document(cert_40).model_dump_json(by_alias=True))
    assert list(document) == ["params", "group", "stages", "branches", "overall"]
    assert document["params"] == {"v": 216, "k": 40, "lambda": 4, "mu": 8}
    assert document["group"] == "Z2^3xZ3^3"
    assert document["overall"] == "NONEXISTENT"
    assert len(document["branches"]) == 2
    assert [s["name"] for s in document["stages"][:3]] == [
        "parameters", "group_identification", "preconditions",
    ]
    assert all(set(s) == {"name", "inputs", "outputs", "verdict"} for s in document["stages"])


def test_certificate_is_deterministic(cert_40):
    again = get_certificate_pipeline().certify(PdsParams(216, 40, 4, 8), jobs=2)
    first = certificate_document(cert_40).model_dump_json(by_alias=True)
    assert certificate_document(again).model_dump_json(by_alias=True) == first


def test_pruned_search_gives_same_verdict():
    cert = certify(PdsParams(216, 40, 4, 8), prune_automorphisms=True)
    assert cert.overall == Verdict.NONEXISTENT
    assert cert.stage("case[n2=0].weight_assignment_search").inputs["prune_automorphisms"] is True
