"""Tests for finite Abelian group arithmetic."""

import math

import pytest
from hypothesis import given, settings, strategies as st

from pdscert.core.groups import (
    GroupElement,
    GroupSpec,
    Subgroup,
    abelian_groups_of_order,
    gaussian_binomial,
    is_subgroup_set,
    subgroup_product,
)
from pdscert.errors import (
    EmptySylowError,
    NotationError,
    PreconditionError,
    StructuralError,
    UnsupportedStructureError,
)

SMALL_FACTORS = [(2,), (3,), (4,), (5,), (2, 2), (2, 3), (3, 3), (2, 4), (9,), (2, 2, 3), (2, 2, 2)]


@st.composite
def group_and_elements(draw, count=2):
    group = GroupSpec(draw(st.sampled_from(SMALL_FACTORS)))
    elements = [draw(st.sampled_from(group.elements())) for _ in range(count)]
    return group, elements


# ============= Notation =============

def test_parse_canonical_216(g216):
    assert g216.factors == (2, 2, 2, 3, 3, 3)
    assert g216.order == 216
    assert g216.notation == "Z2^3xZ3^3"


@pytest.mark.parametrize("text,factors", [
    ("Z6", (2, 3)),
    (" z3 X z3 ", (3, 3)),
    ("Z3^3xZ2^3", (2, 2, 2, 3, 3, 3)),
    ("Z12", (4, 3)),
    ("Z1", ()),
    ("Z1xZ5", (5,)),
])
def test_parse_variants(text, factors):
    assert GroupSpec.parse(text).factors == factors


def test_notation_round_trip():
    for factors in SMALL_FACTORS + [(2, 2, 2, 3, 3, 3), (4, 8, 3)]:
        group = GroupSpec(factors)
        assert GroupSpec.parse(group.notation) == group


@pytest.mark.parametrize("text", ["", "Z0", "Q3", "Z3^", "Z3xx", "Z-2"])
def test_parse_rejects(text):
    with pytest.raises(NotationError):
        GroupSpec.parse(text)


def test_trivial_group():
    group = GroupSpec.parse("Z1")
    assert group.order == 1
    assert group.notation == "Z1"
    assert group.elements() == (group.identity,)


def test_element_literals(z3sq):
    assert z3sq.parse_element("(1, 2)") == GroupElement((1, 2))
    assert z3sq.parse_element("(4,5)", reduce=True) == GroupElement((1, 2))
    with pytest.raises(StructuralError):
        z3sq.parse_element("(4,5)")
    with pytest.raises(StructuralError):
        z3sq.parse_element("(1,2,0)")
    with pytest.raises(NotationError):
        z3sq.parse_element("1,2")


# ============= Arithmetic =============

def test_elements_canonical_order(z3sq):
    elements = z3sq.elements()
    assert len(elements) == 9
    assert list(elements) == sorted(elements)
    assert all(z3sq.index(g) == i for i, g in enumerate(elements))


@given(group_and_elements(count=3))
def test_group_laws(data):
    group, (a, b, c) = data
    assert group.compose(a, b) == group.compose(b, a)
    assert group.compose(group.compose(a, b), c) == group.compose(a, group.compose(b, c))
    assert group.compose(a, group.inverse(a)) == group.identity
    assert group.compose(a, group.identity) == a


@given(group_and_elements(count=1), st.integers(min_value=-20, max_value=20))
def test_power_and_order(data, s):
    group, (g,) = data
    o = group.order_of(g)
    assert group.order % o == 0
    assert group.power(g, o) == group.identity
    assert all(group.power(g, t) != group.identity for t in range(1, o))
    assert group.power(g, s) == group.power(g, s % o)
    assert group.order_of(group.power(g, s)) == o // math.gcd(s, o)


@given(group_and_elements(count=1))
def test_power_is_repeated_compose(data):
    group, (g,) = data
    acc = group.identity
    for s in range(13):
        assert group.power(g, s) == acc
        acc = group.compose(acc, g)


def test_compose_mismatch(z3sq):
    with pytest.raises(StructuralError):
        z3sq.compose(GroupElement((1, 0)), GroupElement((1, 0, 0)))


def test_element_orders_216(g216):
    assert len(g216.elements_of_order(1)) == 1
    assert len(g216.elements_of_order(2)) == 7
    assert len(g216.elements_of_order(3)) == 26
    assert len(g216.elements_of_order(6)) == 182
    assert len(g216.elements_of_order(4)) == 0
    with pytest.raises(PreconditionError):
        g216.elements_of_order(0)


def test_exponent(g216):
    assert g216.exponent == 6
    assert GroupSpec.of(4, 2).exponent == 4


# ============= Subgroups =============

def test_sylow_subgroups(g216):
    n = g216.sylow_subgroup(2)
    assert n.order == 8
    assert all(g216.order_of(g) in (1, 2) for g in n)
    assert g216.sylow_subgroup(3).order == 27
    with pytest.raises(EmptySylowError):
        g216.sylow_subgroup(5)
    with pytest.raises(StructuralError):
        g216.sylow_subgroup(4)


def test_elementary_subgroups_216(g216):
    points = g216.elementary_subgroups(3, 1)
    lines = g216.elementary_subgroups(3, 2)
    assert len(points) == 13
    assert len(lines) == 13
    assert all(p.order == 3 for p in points)
    assert all(line.order == 9 for line in lines)
    assert len(set(points)) == 13
    assert all(is_subgroup_set(g216, line.elements) for line in lines)


def test_point_line_incidence_216(g216):
    points = g216.elementary_subgroups(3, 1)
    lines = g216.elementary_subgroups(3, 2)
    for p in points:
        assert sum(p.issubset(line) for line in lines) == 4
    for line in lines:
        assert sum(p.issubset(line) for p in points) == 4


def test_elementary_subgroups_errors():
    with pytest.raises(UnsupportedStructureError):
        GroupSpec.of(9).elementary_subgroups(3, 1)
    with pytest.raises(EmptySylowError):
        GroupSpec.of(2, 2).elementary_subgroups(3, 1)
    with pytest.raises(UnsupportedStructureError):
        GroupSpec.of(3, 3).elementary_subgroups(3, 3)


def test_gaussian_binomial():
    assert gaussian_binomial(3, 1, 3) == 13
    assert gaussian_binomial(3, 2, 3) == 13
    assert gaussian_binomial(2, 1, 2) == 3
    assert gaussian_binomial(3, 4, 2) == 0


def test_subgroup_product(g216):
    n = g216.sylow_subgroup(2)
    p = g216.elementary_subgroups(3, 1)[0]
    product = subgroup_product(p, n)
    assert product.order == 24
    assert p.issubset(product) and n.issubset(product)
    with pytest.raises(PreconditionError):
        subgroup_product(product, n)


def test_generated_by(z3sq):
    sub = Subgroup.generated_by(z3sq, [GroupElement((1, 1))])
    assert sub.elements == (GroupElement((0, 0)), GroupElement((1, 1)), GroupElement((2, 2)))
    assert Subgroup.trivial(z3sq).order == 1


def test_is_subgroup_set(z3sq):
    assert is_subgroup_set(z3sq, z3sq.elements())
    assert not is_subgroup_set(z3sq, [GroupElement((0, 0)), GroupElement((0, 1))])
    assert not is_subgroup_set(z3sq, [GroupElement((0, 1)), GroupElement((0, 2))])


# ============= Isomorphism types =============

def test_abelian_groups_of_order_216():
    groups = abelian_groups_of_order(216)
    assert len(groups) == 9
    assert len(set(groups)) == 9
    assert all(g.order == 216 for g in groups)
    assert GroupSpec.parse("Z2^3xZ3^3") in groups
    assert GroupSpec.parse("Z216") in groups


@pytest.mark.parametrize("v,count", [(1, 1), (7, 1), (8, 3), (16, 5), (36, 4), (72, 6)])
def test_abelian_groups_count(v, count):
    assert len(abelian_groups_of_order(v)) == count


@settings(max_examples=30)
@given(group_and_elements(count=1))
def test_membership(data):
    group, (g,) = data
    assert g in group
    assert GroupElement(g.exponents + (0,)) not in group
