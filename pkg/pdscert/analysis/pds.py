"""
Partial Difference Sets

Parameters, candidate sets, difference spectra and verification, plus the
structural results used to rule parameter sets out: Ma's Sylow exclusions,
Ma's subgroup intersection formula and the local multiplier orbits.
"""

import logging
import math
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Optional, Sequence, Union

from pdscert.core.groups import GroupElement, GroupSpec, is_subgroup_set
from pdscert.errors import InapplicableError, NotationError, StructuralError

logger = logging.getLogger(__name__)


# ============= Parameters =============

@dataclass(frozen=True)
class PdsParams:
    """(v, k, lambda, mu) with beta = lambda - mu and Delta = beta^2 + 4(k - mu)."""
    v: int
    k: int
    lam: int
    mu: int

    def __post_init__(self):
        for name in ("v", "k", "lam", "mu"):
            value = getattr(self, name)
            if not isinstance(value, int) or value < 0:
                raise ValueError(f"{name} must be a nonnegative integer, got {value!r}")
        if not self.k < self.v:
            raise ValueError(f"need 0 <= k < v, got k={self.k}, v={self.v}")
        if self.lam > self.k or self.mu > self.k:
            raise ValueError(f"need lambda, mu <= k, got {self.notation}")

    @classmethod
    def parse(cls, text: str) -> "PdsParams":
        """Parse a comma-joined quadruple ``v,k,lambda,mu``."""
        parts = [p.strip() for p in (text or "").split(",")]
        if len(parts) != 4:
            raise NotationError(f"parameters must be v,k,lambda,mu; got {text!r}")
        try:
            v, k, lam, mu = (int(p) for p in parts)
        except ValueError:
            raise NotationError(f"non-integer parameter in {text!r}")
        try:
            return cls(v, k, lam, mu)
        except ValueError as e:
            raise NotationError(str(e)) from e

    @property
    def notation(self) -> str:
        return f"{self.v},{self.k},{self.lam},{self.mu}"

    def __str__(self) -> str:
        return f"({self.notation})"

    @property
    def beta(self) -> int:
        return self.lam - self.mu

    @property
    def delta(self) -> int:
        return self.beta ** 2 + 4 * (self.k - self.mu)

    @property
    def sqrt_delta(self) -> Optional[int]:
        """Exact square root of Delta, or None when Delta is not a square."""
        if self.delta < 0:
            return None
        root = math.isqrt(self.delta)
        return root if root * root == self.delta else None

    @property
    def delta_is_square(self) -> bool:
        return self.sqrt_delta is not None


# ============= Candidate sets =============

ElementLike = Union[GroupElement, Sequence[int]]


@dataclass(frozen=True)
class CandidateSet:
    """A subset D of a group, stored sorted and duplicate-free."""
    group: GroupSpec
    elements: tuple[GroupElement, ...]

    def __post_init__(self):
        for g in self.elements:
            self.group.check(g)
        object.__setattr__(self, "elements", tuple(sorted(set(self.elements))))

    @classmethod
    def of(cls, group: GroupSpec, elements: Iterable[ElementLike]) -> "CandidateSet":
        items = tuple(
            g if isinstance(g, GroupElement) else group.element(g, reduce=False)
            for g in elements
        )
        return cls(group=group, elements=items)

    @property
    def size(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[GroupElement]:
        return iter(self.elements)

    @cached_property
    def members(self) -> frozenset[GroupElement]:
        return frozenset(self.elements)

    def __contains__(self, g: object) -> bool:
        return g in self.members

    @property
    def contains_identity(self) -> bool:
        return self.group.identity in self.members

    @property
    def inverse_closed(self) -> bool:
        return all(self.group.inverse(g) in self.members for g in self.elements)

    def as_lists(self) -> list[list[int]]:
        return [list(g.exponents) for g in self.elements]


def difference_spectrum(candidate: CandidateSet) -> dict[GroupElement, int]:
    """
    For every non-identity x, the number of ordered pairs (g, h) in D x D,
    g != h, with g h^-1 = x. Keys are in canonical order.
    """
    group = candidate.group
    counts: Counter[GroupElement] = Counter()
    for g in candidate.elements:
        for h in candidate.elements:
            if g != h:
                counts[group.compose(g, group.inverse(h))] += 1
    return {x: counts.get(x, 0) for x in group.elements() if x != group.identity}


@dataclass(frozen=True)
class SpectrumViolation:
    element: GroupElement
    expected: int
    observed: int
    in_set: bool


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class VerificationReport:
    """Outcome of ``verify_pds``; the first violation is in canonical order."""
    passed: bool
    reason: Optional[str] = None
    violation: Optional[SpectrumViolation] = None
    checks: list[CheckResult] = field(default_factory=list)


def verify_pds(candidate: CandidateSet, params: PdsParams) -> VerificationReport:
    """Check that D is a (v,k,lambda,mu)-PDS; failures are report outcomes."""
    report = VerificationReport(passed=False)
    v = candidate.group.order
    if v != params.v:
        report.reason = f"group order {v} != v = {params.v}"
        report.checks.append(CheckResult("group order", False, report.reason))
        return report
    report.checks.append(CheckResult("group order", True, f"|G| = {v}"))

    if candidate.size != params.k:
        report.reason = f"cardinality |D| = {candidate.size} != k = {params.k}"
        report.checks.append(CheckResult("cardinality", False, report.reason))
        return report
    report.checks.append(CheckResult("cardinality", True, f"|D| = {params.k}"))

    for x, observed in difference_spectrum(candidate).items():
        in_set = x in candidate
        expected = params.lam if in_set else params.mu
        if observed != expected:
            report.violation = SpectrumViolation(x, expected, observed, in_set)
            report.reason = (
                f"{x} ({'in' if in_set else 'not in'} D) is represented {observed} times, "
                f"expected {'lambda' if in_set else 'mu'} = {expected}"
            )
            report.checks.append(CheckResult("spectrum", False, report.reason))
            return report
    report.checks.append(
        CheckResult("spectrum", True, f"lambda = {params.lam} on D, mu = {params.mu} off D")
    )
    report.passed = True
    return report


def is_regular(candidate: CandidateSet) -> bool:
    """Inverse-closed and identity-free."""
    return candidate.inverse_closed and not candidate.contains_identity


def is_trivial(candidate: CandidateSet) -> bool:
    """D u {e} or G minus D is a subgroup (checked by explicit closure)."""
    group = candidate.group
    with_identity = set(candidate.elements) | {group.identity}
    if is_subgroup_set(group, with_identity):
        return True
    complement = [g for g in group.elements() if g not in candidate]
    return is_subgroup_set(group, complement)


# ============= Ma's Sylow exclusions =============

@dataclass(frozen=True)
class PrimeExclusion:
    prime: int
    sylow_factors: tuple[int, ...]
    excluded: bool
    reason: str


@dataclass(frozen=True)
class MaExclusionVerdict:
    group: GroupSpec
    primes: tuple[PrimeExclusion, ...]

    @property
    def excluded(self) -> bool:
        return any(p.excluded for p in self.primes)

    @property
    def reasons(self) -> list[str]:
        return [p.reason for p in self.primes if p.excluded]


def ma_exclusion(group: GroupSpec) -> MaExclusionVerdict:
    """
    No non-trivial PDS exists when a Sylow-p subgroup is cyclic and |G| != p,
    or when it is isomorphic to Z_{p^s} x Z_{p^t} with s != t.
    """
    verdicts = []
    for p in group.primes:
        factors = group.sylow_factors(p)
        if len(factors) == 1 and group.order != p:
            verdicts.append(PrimeExclusion(
                p, factors, True, f"cyclic Sylow-{p} subgroup Z{factors[0]} and |G| = {group.order} != {p}"
            ))
        elif len(factors) == 2 and factors[0] != factors[1]:
            verdicts.append(PrimeExclusion(
                p, factors, True, f"Sylow-{p} subgroup Z{factors[0]}xZ{factors[1]} with unequal exponents"
            ))
        else:
            shape = "x".join(f"Z{q}" for q in factors)
            verdicts.append(PrimeExclusion(p, factors, False, f"Sylow-{p} subgroup {shape} admissible"))
    return MaExclusionVerdict(group=group, primes=tuple(verdicts))


# ============= Ma's subgroup intersection formula =============

@dataclass(frozen=True)
class MaIntersectionTrace:
    """
    Evaluation of |D meet N| = (|N| + b1 +- sqrt((|N| + b1)^2 - (D1 - b1^2)(|N| - 1))) / 2
    with pi = gcd(|N|, sqrt(Delta)), theta from (2 theta - 1) pi <= beta < (2 theta + 1) pi,
    b1 = beta - 2 theta pi and D1 = pi^2.
    """
    n: int
    pi: int
    theta: int
    beta1: int
    delta1: int
    discriminant: int
    candidate_sizes: tuple[int, ...]
    failed_conditions: tuple[str, ...] = ()

    @property
    def applicable(self) -> bool:
        return not self.failed_conditions


def ma_subgroup_intersection(params: PdsParams, n: int, strict: bool = True) -> MaIntersectionTrace:
    """
    Admissible sizes of D meet N for a subgroup N of order n.

    Both sign branches are evaluated; a branch survives when the discriminant
    is a perfect square, the numerator is even and the size lies in
    [0, min(n, k)]. With ``strict`` the coprimality and oddness hypotheses
    raise ``InapplicableError``; otherwise they are recorded on the trace.
    """
    root = params.sqrt_delta
    if root is None:
        raise InapplicableError(f"Delta = {params.delta} is not a perfect square")
    if n < 1 or params.v % n:
        raise InapplicableError(f"|N| = {n} does not divide v = {params.v}")

    failed = []
    cofactor = params.v // n
    if math.gcd(n, cofactor) != 1:
        failed.append(f"gcd(|N|, v/|N|) = gcd({n}, {cofactor}) != 1")
    if cofactor % 2 == 0:
        failed.append(f"v/|N| = {cofactor} is even")
    if failed and strict:
        raise InapplicableError("; ".join(failed))

    pi = math.gcd(n, root)
    theta = (params.beta + pi) // (2 * pi)
    beta1 = params.beta - 2 * theta * pi
    delta1 = pi * pi
    discriminant = (n + beta1) ** 2 - (delta1 - beta1 ** 2) * (n - 1)

    sizes = set()
    if discriminant >= 0:
        r = math.isqrt(discriminant)
        if r * r == discriminant:
            for numerator in (n + beta1 + r, n + beta1 - r):
                if numerator % 2 == 0 and 0 <= numerator // 2 <= min(n, params.k):
                    sizes.add(numerator // 2)

    trace = MaIntersectionTrace(
        n=n,
        pi=pi,
        theta=theta,
        beta1=beta1,
        delta1=delta1,
        discriminant=discriminant,
        candidate_sizes=tuple(sorted(sizes)),
        failed_conditions=tuple(failed),
    )
    logger.debug("intersection formula for %s, |N| = %d: %s", params, n, trace)
    return trace


# ============= Local multiplier orbits =============

def lmt_orbit(group: GroupSpec, g: GroupElement) -> tuple[GroupElement, ...]:
    """{g^s : gcd(s, o(g)) = 1}, sorted."""
    o = group.order_of(g)
    return tuple(sorted({group.power(g, s) for s in range(1, o + 1) if math.gcd(s, o) == 1}))


def lmt_orbits(group: GroupSpec) -> list[tuple[GroupElement, ...]]:
    """The partition of G into multiplier orbits, ordered by least element."""
    seen: set[GroupElement] = set()
    orbits = []
    for g in group.elements():
        if g not in seen:
            orbit = lmt_orbit(group, g)
            seen.update(orbit)
            orbits.append(orbit)
    return orbits


def lmt_closed(candidate: CandidateSet) -> bool:
    """D is a union of multiplier orbits."""
    group = candidate.group
    return all(
        set(lmt_orbit(group, g)) <= candidate.members for g in candidate.elements
    )


# ============= Fourth-power fibers =============

def b_profile(candidate: CandidateSet) -> dict[GroupElement, int]:
    """
    B_g = |{x in D : x^4 = g}| for every element g of order 3.

    Needs a group of exponent dividing 6 with 3 | v, where x -> x^4 maps the
    elements of order 3 or 6 onto the elements of order 3. Elements of order
    1 or 2 fall in no fiber.
    """
    group = candidate.group
    if group.order % 3 or 6 % group.exponent:
        raise StructuralError(
            f"fourth-power fibers need exponent dividing 6 and 3 | v; {group.notation} has "
            f"exponent {group.exponent}"
        )
    profile = {g: 0 for g in group.elements_of_order(3)}
    for x in candidate.elements:
        if group.order_of(x) in (3, 6):
            profile[group.power(x, 4)] += 1
    return profile
