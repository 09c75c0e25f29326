"""
Finite Abelian Groups

Exact arithmetic for groups given as products of cyclic factors. Factors are
kept in primary-decomposed canonical form (sorted by prime, then exponent),
and elements are exponent vectors over those factors. The group operation is
componentwise addition; reports write it multiplicatively (gh, g^s).
"""

import itertools
import logging
import math
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from sympy import factorint, isprime
from sympy.utilities.iterables import partitions

from pdscert.errors import (
    EmptySylowError,
    IntegrityError,
    NotationError,
    PreconditionError,
    StructuralError,
    UnsupportedStructureError,
)

logger = logging.getLogger(__name__)

_FACTOR_RE = re.compile(r"^z(\d+)(?:\^(\d+))?$")
_ELEMENT_RE = re.compile(r"^\((.*)\)$")


def canonical_factors(orders: Iterable[int]) -> tuple[int, ...]:
    """Primary decomposition of a list of cyclic orders, sorted by (p, a)."""
    parts: list[tuple[int, int]] = []
    for n in orders:
        n = int(n)
        if n < 2:
            raise StructuralError(f"cyclic factor order must be >= 2, got {n}")
        for p, a in factorint(n).items():
            parts.append((int(p), int(a)))
    parts.sort()
    return tuple(p ** a for p, a in parts)


def prime_of(q: int) -> int:
    """The prime of a prime power."""
    (p,) = factorint(q).keys()
    return int(p)


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of an n-dimensional space over GF(q)."""
    if k < 0 or k > n:
        return 0
    num = 1
    den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


@dataclass(frozen=True, order=True)
class GroupElement:
    """An element as an exponent vector, one residue per cyclic factor."""
    exponents: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "exponents", tuple(int(x) for x in self.exponents))

    def __str__(self) -> str:
        return "(" + ",".join(str(x) for x in self.exponents) + ")"

    def __repr__(self) -> str:
        return f"GroupElement{self}"


@dataclass(frozen=True)
class GroupSpec:
    """
    A finite Abelian group as a product of cyclic groups.

    The constructor accepts any cyclic orders >= 2 and stores their primary
    decomposition, so ``GroupSpec((6,))`` and ``GroupSpec((2, 3))`` are equal.
    """
    factors: tuple[int, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "factors", canonical_factors(self.factors))

    # ============= Construction and notation =============

    @classmethod
    def of(cls, *orders: int) -> "GroupSpec":
        return cls(tuple(orders))

    @classmethod
    def parse(cls, text: str) -> "GroupSpec":
        """
        Parse ``Zn^k`` factors joined by ``x``, e.g. ``Z2^3xZ3^3``.

        Whitespace is ignored and ``Z``/``x`` are case-insensitive. ``Z1``
        contributes nothing.
        """
        compact = re.sub(r"\s+", "", text or "").lower()
        if not compact:
            raise NotationError("empty group notation")
        orders: list[int] = []
        for token in compact.split("x"):
            match = _FACTOR_RE.match(token)
            if not match:
                raise NotationError(f"bad group factor {token!r} in {text!r}")
            n = int(match.group(1))
            count = int(match.group(2)) if match.group(2) is not None else 1
            if n == 0:
                raise NotationError(f"Z0 is not a finite cyclic group in {text!r}")
            if n > 1:
                orders.extend([n] * count)
        return cls(tuple(orders))

    @property
    def notation(self) -> str:
        """Canonical notation; ``GroupSpec.parse(G.notation) == G``."""
        if not self.factors:
            return "Z1"
        parts = []
        for q, run in itertools.groupby(self.factors):
            count = len(list(run))
            parts.append(f"Z{q}^{count}" if count > 1 else f"Z{q}")
        return "x".join(parts)

    def __str__(self) -> str:
        return self.notation

    # ============= Basic invariants =============

    @property
    def order(self) -> int:
        return math.prod(self.factors)

    @property
    def rank(self) -> int:
        return len(self.factors)

    @property
    def exponent(self) -> int:
        return math.lcm(*self.factors)

    @property
    def primes(self) -> list[int]:
        return sorted({prime_of(q) for q in self.factors})

    @cached_property
    def identity(self) -> GroupElement:
        return GroupElement((0,) * self.rank)

    @cached_property
    def _elements(self) -> tuple[GroupElement, ...]:
        return tuple(
            GroupElement(e) for e in itertools.product(*(range(q) for q in self.factors))
        )

    def elements(self) -> tuple[GroupElement, ...]:
        """All elements in canonical (lexicographic) order."""
        return self._elements

    @cached_property
    def strides(self) -> tuple[int, ...]:
        strides = []
        acc = 1
        for q in reversed(self.factors):
            strides.append(acc)
            acc *= q
        return tuple(reversed(strides))

    def index(self, g: GroupElement) -> int:
        """Position of g in ``elements()``."""
        return sum(e * s for e, s in zip(g.exponents, self.strides))

    def element(self, values: Sequence[int], reduce: bool = True) -> GroupElement:
        """
        Build an element from an exponent vector.

        With ``reduce`` entries are taken modulo their factor; otherwise
        out-of-range entries raise ``StructuralError``.
        """
        values = tuple(int(x) for x in values)
        if len(values) != self.rank:
            raise StructuralError(
                f"element {values} has {len(values)} entries, {self.notation} has {self.rank} factors"
            )
        if reduce:
            return GroupElement(tuple(x % q for x, q in zip(values, self.factors)))
        g = GroupElement(values)
        self.check(g)
        return g

    def parse_element(self, text: str, reduce: bool = False) -> GroupElement:
        """Parse an element literal ``(a1,...,an)`` in canonical factor order."""
        compact = re.sub(r"\s+", "", text or "")
        match = _ELEMENT_RE.match(compact)
        if not match:
            raise NotationError(f"element literal must be parenthesized: {text!r}")
        body = match.group(1)
        try:
            values = [int(x) for x in body.split(",")] if body else []
        except ValueError:
            raise NotationError(f"non-integer entry in element literal {text!r}")
        return self.element(values, reduce=reduce)

    def check(self, g: GroupElement) -> None:
        """Raise ``StructuralError`` unless g is an element of this group."""
        if len(g.exponents) != self.rank:
            raise StructuralError(
                f"element {g} has {len(g.exponents)} entries, {self.notation} has {self.rank} factors"
            )
        for e, q in zip(g.exponents, self.factors):
            if not 0 <= e < q:
                raise StructuralError(f"entry {e} of {g} is not reduced modulo {q}")

    def __contains__(self, g: object) -> bool:
        if not isinstance(g, GroupElement):
            return False
        try:
            self.check(g)
        except StructuralError:
            return False
        return True

    # ============= Arithmetic =============

    def compose(self, g: GroupElement, h: GroupElement) -> GroupElement:
        if len(g.exponents) != self.rank or len(h.exponents) != self.rank:
            raise StructuralError(
                f"cannot compose {g} and {h} in {self.notation} ({self.rank} factors)"
            )
        return GroupElement(
            tuple((a + b) % q for a, b, q in zip(g.exponents, h.exponents, self.factors))
        )

    def inverse(self, g: GroupElement) -> GroupElement:
        return GroupElement(tuple((-a) % q for a, q in zip(g.exponents, self.factors)))

    def power(self, g: GroupElement, s: int) -> GroupElement:
        """g^s for any integer s, negative included."""
        return GroupElement(tuple((a * s) % q for a, q in zip(g.exponents, self.factors)))

    def order_of(self, g: GroupElement) -> int:
        return math.lcm(*(q // math.gcd(a, q) for a, q in zip(g.exponents, self.factors)))

    def elements_of_order(self, n: int) -> list[GroupElement]:
        if n < 1:
            raise PreconditionError(f"element order must be >= 1, got {n}")
        return [g for g in self._elements if self.order_of(g) == n]

    # ============= Subgroups =============

    def sylow_positions(self, p: int) -> list[int]:
        """Indices of the factors that are powers of p."""
        return [i for i, q in enumerate(self.factors) if q % p == 0]

    def sylow_factors(self, p: int) -> tuple[int, ...]:
        return tuple(self.factors[i] for i in self.sylow_positions(p))

    def _unit(self, position: int) -> GroupElement:
        exps = [0] * self.rank
        exps[position] = 1
        return GroupElement(tuple(exps))

    def _embed(self, positions: Sequence[int], values: Sequence[int]) -> GroupElement:
        exps = [0] * self.rank
        for i, x in zip(positions, values):
            exps[i] = x
        return GroupElement(tuple(exps))

    def sylow_subgroup(self, p: int) -> "Subgroup":
        """The subgroup of all elements of p-power order."""
        if not isprime(p):
            raise StructuralError(f"{p} is not prime")
        if self.order % p:
            raise EmptySylowError(f"{p} does not divide |{self.notation}| = {self.order}")
        positions = self.sylow_positions(p)
        elements = tuple(
            self._embed(positions, values)
            for values in itertools.product(*(range(self.factors[i]) for i in positions))
        )
        return Subgroup(
            group=self,
            generators=tuple(self._unit(i) for i in positions),
            elements=tuple(sorted(elements)),
        )

    def elementary_subgroups(self, p: int, rank: int) -> list["Subgroup"]:
        """
        All subgroups of the Sylow-p part isomorphic to Z_p^rank.

        The Sylow-p part must be elementary Abelian; subgroups are enumerated
        as row-reduced bases of subspaces over GF(p) and returned sorted by
        their element lists.
        """
        if not isprime(p):
            raise StructuralError(f"{p} is not prime")
        positions = self.sylow_positions(p)
        if not positions:
            raise EmptySylowError(f"{p} does not divide |{self.notation}| = {self.order}")
        if any(self.factors[i] != p for i in positions):
            raise UnsupportedStructureError(
                f"Sylow-{p} part {self.sylow_factors(p)} of {self.notation} is not elementary Abelian"
            )
        r = len(positions)
        if not 0 <= rank <= r:
            raise UnsupportedStructureError(
                f"rank {rank} out of range for elementary Sylow-{p} part of rank {r}"
            )

        subgroups = []
        for basis in _row_reduced_bases(p, r, rank):
            generators = tuple(self._embed(positions, row) for row in basis)
            subgroups.append(Subgroup.generated_by(self, generators))
        subgroups.sort(key=lambda s: s.elements)

        expected = gaussian_binomial(r, rank, p)
        if len(subgroups) != expected:
            raise IntegrityError(
                f"found {len(subgroups)} subgroups Z{p}^{rank}, expected {expected}"
            )
        logger.debug("%s: %d subgroups isomorphic to Z%d^%d", self.notation, len(subgroups), p, rank)
        return subgroups


def _row_reduced_bases(p: int, n: int, k: int) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Reduced row echelon k x n matrices of rank k over GF(p)."""
    for pivots in itertools.combinations(range(n), k):
        free = [
            (row, col)
            for row, pivot in enumerate(pivots)
            for col in range(pivot + 1, n)
            if col not in pivots
        ]
        for values in itertools.product(range(p), repeat=len(free)):
            rows = [[0] * n for _ in range(k)]
            for row, pivot in enumerate(pivots):
                rows[row][pivot] = 1
            for (row, col), x in zip(free, values):
                rows[row][col] = x
            yield tuple(tuple(r) for r in rows)


@dataclass(frozen=True, eq=False)
class Subgroup:
    """A subgroup with an explicit sorted element list."""
    group: GroupSpec
    generators: tuple[GroupElement, ...]
    elements: tuple[GroupElement, ...]

    @classmethod
    def generated_by(cls, group: GroupSpec, generators: Iterable[GroupElement]) -> "Subgroup":
        generators = tuple(generators)
        for g in generators:
            group.check(g)
        seen = {group.identity}
        frontier = [group.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for g in generators:
                    y = group.compose(x, g)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return cls(group=group, generators=generators, elements=tuple(sorted(seen)))

    @classmethod
    def trivial(cls, group: GroupSpec) -> "Subgroup":
        return cls(group=group, generators=(), elements=(group.identity,))

    @property
    def order(self) -> int:
        return len(self.elements)

    @cached_property
    def members(self) -> frozenset[GroupElement]:
        return frozenset(self.elements)

    def __contains__(self, g: object) -> bool:
        return g in self.members

    def __iter__(self) -> Iterator[GroupElement]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def issubset(self, other: "Subgroup") -> bool:
        return self.members <= other.members

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.group == other.group and self.elements == other.elements

    def __hash__(self) -> int:
        return hash((self.group, self.elements))

    def __repr__(self) -> str:
        gens = ",".join(str(g) for g in self.generators)
        return f"Subgroup(<{gens}> of order {self.order} in {self.group.notation})"


def subgroup_product(a: Subgroup, b: Subgroup) -> Subgroup:
    """Internal direct product of two subgroups meeting only in the identity."""
    if a.group != b.group:
        raise StructuralError(f"subgroups live in {a.group} and {b.group}")
    group = a.group
    common = a.members & b.members
    if common != {group.identity}:
        raise PreconditionError(
            f"subgroups of order {a.order} and {b.order} intersect in {len(common)} elements"
        )
    elements = {group.compose(x, y) for x in a.elements for y in b.elements}
    return Subgroup(
        group=group,
        generators=a.generators + b.generators,
        elements=tuple(sorted(elements)),
    )


def is_subgroup_set(group: GroupSpec, elements: Iterable[GroupElement]) -> bool:
    """Explicit closure test: contains e and is closed under composition."""
    members = set(elements)
    if group.identity not in members:
        return False
    return all(group.compose(x, y) in members for x in members for y in members)


def abelian_groups_of_order(v: int) -> list[GroupSpec]:
    """All isomorphism types of Abelian groups of order v, sorted by factors."""
    if v < 1:
        raise PreconditionError(f"group order must be >= 1, got {v}")
    per_prime: list[list[tuple[int, ...]]] = []
    for p, a in sorted(factorint(v).items()):
        p, a = int(p), int(a)
        shapes = []
        for part in partitions(a):
            shape = []
            for size, mult in part.items():
                shape.extend([p ** size] * mult)
            shapes.append(tuple(sorted(shape)))
        per_prime.append(sorted(shapes))
    groups = [
        GroupSpec(tuple(itertools.chain.from_iterable(combo)))
        for combo in itertools.product(*per_prime)
    ]
    return sorted(groups, key=lambda g: g.factors)
