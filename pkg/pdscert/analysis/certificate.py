"""
Nonexistence Certificates

Runs the staged argument against a (v,k,lambda,mu)-PDS in an Abelian group of
order 216 and records every stage (inputs, outputs, verdict) so the result
can be replayed and diffed:

  group identification -> preconditions -> fourth/fifth-power fibers
  -> |N meet D| -> plane -> line contents m -> per case n2:
     C-system targets -> solutions -> block weights m' -> parity -> search

The verdict is NONEXISTENT only when every case closes; anything else is
INCONCLUSIVE. The pipeline never exhibits a PDS.
"""

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Iterable, Optional

import numpy as np

from pdscert.analysis.pds import (
    MaExclusionVerdict,
    MaIntersectionTrace,
    PdsParams,
    ma_exclusion,
    ma_subgroup_intersection,
)
from pdscert.core.designs import (
    IncidenceStructure,
    build_plane,
    plane_fingerprint,
    planes_isomorphic,
    parity_excludes,
    projective_plane_direct,
    weight_assignment_search,
)
from pdscert.core.diophantine import CSystem, enumerate_solutions
from pdscert.core.groups import GroupSpec, abelian_groups_of_order
from pdscert.errors import InapplicableError, IntegrityError
from pdscert.models.schemas import (
    CaseBranchDocument,
    CertificateDocument,
    ParamsDocument,
    StageRecordDocument,
    StageVerdictEnum,
    VerdictEnum,
)

logger = logging.getLogger(__name__)


class Verdict(str, Enum):
    """Overall certificate verdict."""
    NONEXISTENT = "NONEXISTENT"
    INCONCLUSIVE = "INCONCLUSIVE"


class StageVerdict(str, Enum):
    PASS = "pass"
    UNMET = "unmet"
    CLOSED = "closed"
    OPEN = "open"


@dataclass
class StageRecord:
    name: str
    inputs: dict[str, Any]
    outputs: dict[str, Any]
    verdict: StageVerdict


@dataclass
class MultisetOutcome:
    """Fate of one C-multiset within a case."""
    multiset: tuple[int, ...]
    parity_excluded: bool
    assignments: int

    @property
    def closed(self) -> bool:
        return self.assignments == 0

    @property
    def excluded_by(self) -> list[str]:
        reasons = ["parity"] if self.parity_excluded else []
        if self.closed:
            reasons.append("search")
        return reasons


@dataclass
class CaseBranch:
    """One admissible number n2 of order-2 elements in D."""
    n2: int
    system: CSystem
    m_options: tuple[int, ...]
    allowed: tuple[int, ...]
    multisets: list[tuple[int, ...]] = field(default_factory=list)
    outcomes: list[MultisetOutcome] = field(default_factory=list)

    @property
    def closed(self) -> bool:
        return all(o.closed for o in self.outcomes)

    @property
    def survivors_after_parity(self) -> list[tuple[int, ...]]:
        return [o.multiset for o in self.outcomes if not o.parity_excluded]


@dataclass
class Certificate:
    params: PdsParams
    group: Optional[GroupSpec] = None
    stages: list[StageRecord] = field(default_factory=list)
    branches: list[CaseBranch] = field(default_factory=list)
    overall: Verdict = Verdict.INCONCLUSIVE

    def stage(self, name: str) -> StageRecord:
        for record in self.stages:
            if record.name == name:
                return record
        raise KeyError(name)


@dataclass(frozen=True)
class GroupIdentification:
    survivor: GroupSpec
    verdicts: tuple[MaExclusionVerdict, ...]


# ============= Stage operations =============

def group_identification(v: int) -> GroupIdentification:
    """The unique Abelian group of order v that survives Ma's Sylow exclusions."""
    verdicts = tuple(ma_exclusion(g) for g in abelian_groups_of_order(v))
    survivors = [verdict.group for verdict in verdicts if not verdict.excluded]
    if len(survivors) != 1:
        raise IntegrityError(
            f"{len(survivors)} of {len(verdicts)} Abelian groups of order {v} survive "
            f"({', '.join(g.notation for g in survivors) or 'none'}); expected exactly one",
            stage="group_identification",
        )
    return GroupIdentification(survivor=survivors[0], verdicts=verdicts)


def c_system_targets(params: PdsParams, n2: int, involutions: int = 7, length: int = 13) -> CSystem:
    """
    Sum and sum of squares of the C values when D holds n2 involutions.

    Counting differences that land on involutions:
      sum B(B-1) = lambda n2 + mu (involutions - n2) - n2 (n2 - 1),
    and with B paired into C, sum C = (k - n2)/2 and
      sum C^2 = sum B(B-1) / 2 + sum C.
    """
    stage = "c_system_targets"
    if not 0 <= n2 <= involutions:
        raise IntegrityError(f"n2 = {n2} outside [0, {involutions}]", stage=stage)
    if (params.k - n2) % 2:
        raise IntegrityError(f"k - n2 = {params.k - n2} is odd", stage=stage)
    total = (params.k - n2) // 2
    fiber_pairs = params.lam * n2 + params.mu * (involutions - n2) - n2 * (n2 - 1)
    if fiber_pairs < 0 or fiber_pairs % 2:
        raise IntegrityError(f"sum B(B-1) = {fiber_pairs} is negative or odd", stage=stage)
    return CSystem(length=length, total=total, square_total=fiber_pairs // 2 + total)


def line_content_options(params: PdsParams, h: int) -> tuple[int, ...]:
    """
    All m in [0, min(k, h-1)] with
      m(m-1) + (k-m)(k-m-2)/2 = lambda m + mu (h-1-m),
    compared after doubling so no fraction appears.
    """
    k, lam, mu = params.k, params.lam, params.mu
    return tuple(
        m for m in range(0, min(k, h - 1) + 1)
        if 2 * m * (m - 1) + (k - m) * (k - m - 2) == 2 * lam * m + 2 * mu * (h - 1 - m)
    )


def allowed_line_weights(m_options: Iterable[int], n2: int) -> tuple[int, ...]:
    """Block weights m' = (m - n2)/2."""
    weights = set()
    for m in m_options:
        if m < n2 or (m - n2) % 2:
            raise IntegrityError(
                f"m = {m} cannot hold n2 = {n2} involutions with an even remainder",
                stage="allowed_line_weights",
            )
        weights.add((m - n2) // 2)
    return tuple(sorted(weights))


def fiber_pairing(group: GroupSpec) -> dict[str, Any]:
    """
    Check that x -> x^4 maps the elements of order 3 or 6 onto the elements
    of order 3 with equal fibers, and that x -> x^5 carries the fiber of g
    bijectively onto the fiber of g^2.
    """
    order3 = group.elements_of_order(3)
    fibers: dict = {g: [] for g in order3}
    for x in group.elements():
        if group.order_of(x) in (3, 6):
            fibers[group.power(x, 4)].append(x)
    sizes = {len(f) for f in fibers.values()}
    if len(sizes) != 1:
        raise IntegrityError(f"unequal fourth-power fibers {sorted(sizes)}", stage="fiber_pairing")
    for g, fiber in fibers.items():
        image = {group.power(x, 5) for x in fiber}
        if len(image) != len(fiber) or image != set(fibers[group.power(g, 2)]):
            raise IntegrityError(f"x -> x^5 does not pair the fibers of {g} and its square",
                                 stage="fiber_pairing")
    return {
        "order3_elements": len(order3),
        "fiber_size": sizes.pop() if sizes else 0,
        "c_values": len(order3) // 2,
        "fifth_power_bijection": True,
    }


def _count_assignments(
    incidence: np.ndarray,
    multiset: tuple[int, ...],
    allowed: tuple[int, ...],
    prune_automorphisms: bool,
) -> int:
    plane = IncidenceStructure(
        points=tuple(range(incidence.shape[0])),
        blocks=tuple(range(incidence.shape[1])),
        incidence=incidence,
    )
    return len(weight_assignment_search(plane, multiset, allowed, prune_automorphisms))


# ============= Pipeline =============

class CertificatePipeline:
    """
    Staged nonexistence argument.

    Each stage appends a ``StageRecord``; failed hypotheses end the run with
    INCONCLUSIVE, broken invariants raise ``IntegrityError`` tagged with the
    stage name.
    """

    def certify(
        self,
        params: PdsParams,
        jobs: int = 1,
        prune_automorphisms: bool = False,
    ) -> Certificate:
        cert = Certificate(params=params)
        logger.info("certifying %s", params)

        square = params.delta_is_square
        self._record(cert, "parameters",
                     {"v": params.v, "k": params.k, "lambda": params.lam, "mu": params.mu},
                     {"beta": params.beta, "delta": params.delta,
                      "sqrt_delta": params.sqrt_delta, "delta_is_square": square},
                     StageVerdict.PASS if square else StageVerdict.UNMET)

        ident = group_identification(params.v)
        group = ident.survivor
        cert.group = group
        self._record(cert, "group_identification", {"v": params.v}, {
            "groups": [
                {"group": verdict.group.notation, "excluded": verdict.excluded,
                 "reasons": [p.reason for p in verdict.primes]}
                for verdict in ident.verdicts
            ],
            "excluded": sum(1 for verdict in ident.verdicts if verdict.excluded),
            "survivor": group.notation,
        }, StageVerdict.PASS)

        sylow3 = group.sylow_factors(3)
        checks = {
            "delta_is_square": square,
            "sylow3_elementary_rank3": sylow3 == (3, 3, 3),
            "exponent_divides_6": 6 % group.exponent == 0,
        }
        met = all(checks.values())
        self._record(cert, "preconditions", {"group": group.notation}, checks,
                     StageVerdict.PASS if met else StageVerdict.UNMET)
        if not met:
            logger.info("preconditions unmet for %s in %s", params, group.notation)
            return cert

        pairing = fiber_pairing(group)
        self._record(cert, "fiber_pairing", {"group": group.notation}, pairing, StageVerdict.PASS)

        base_order = math.prod(group.sylow_factors(2))
        try:
            trace = ma_subgroup_intersection(params, base_order)
        except InapplicableError as e:
            self._record(cert, "subgroup_intersection", {"n": base_order},
                         {"condition": e.condition}, StageVerdict.UNMET)
            return cert
        self._record(cert, "subgroup_intersection", {"n": base_order}, self._trace_outputs(trace),
                     StageVerdict.PASS)

        plane = build_plane(group)
        direct = projective_plane_direct()
        isomorphic = planes_isomorphic(plane, direct)
        if not isomorphic:
            raise IntegrityError("subgroup plane is not isomorphic to PG(2,3)", stage="plane")
        if plane.num_points != pairing["c_values"]:
            raise IntegrityError(
                f"{plane.num_points} points but {pairing['c_values']} C values", stage="plane")
        self._record(cert, "plane", {"group": group.notation}, {
            "points": plane.num_points,
            "blocks": plane.num_blocks,
            "point_subgroup_order": plane.points[0].order,
            "block_subgroup_order": plane.blocks[0].order,
            "block_size": plane.block_sizes[0],
            "point_degree": plane.point_degrees[0],
            "lines": [list(plane.block_points(j)) for j in range(plane.num_blocks)],
            "isomorphic_to_pg23": isomorphic,
            "fingerprint": plane_fingerprint(plane),
        }, StageVerdict.PASS)

        h = plane.blocks[0].order
        m_options = line_content_options(params, h)
        self._record(cert, "line_content", {"h": h, "h_minus_1": h - 1}, {"m": list(m_options)},
                     StageVerdict.PASS)

        involutions = plane.base.order - 1
        for n2 in trace.candidate_sizes:
            cert.branches.append(self._open_branch(cert, params, n2, involutions, m_options,
                                                   pairing["c_values"]))

        self._search_branches(cert, plane, jobs, prune_automorphisms)

        for branch in cert.branches:
            prefix = f"case[n2={branch.n2}]"
            self._record(cert, f"{prefix}.weight_assignment_search",
                         {"n2": branch.n2, "allowed": list(branch.allowed),
                          "prune_automorphisms": prune_automorphisms},
                         {"outcomes": [
                             {"multiset": list(o.multiset), "parity_excluded": o.parity_excluded,
                              "assignments": o.assignments, "excluded_by": o.excluded_by}
                             for o in branch.outcomes
                         ]},
                         StageVerdict.CLOSED if branch.closed else StageVerdict.OPEN)
            logger.info("%s: %s", prefix, "closed" if branch.closed else "open")

        if all(branch.closed for branch in cert.branches):
            cert.overall = Verdict.NONEXISTENT
        logger.info("%s: %s", params, cert.overall.value)
        return cert

    def _open_branch(
        self,
        cert: Certificate,
        params: PdsParams,
        n2: int,
        involutions: int,
        m_options: tuple[int, ...],
        length: int,
    ) -> CaseBranch:
        prefix = f"case[n2={n2}]"
        system = c_system_targets(params, n2, involutions=involutions, length=length)
        self._record(cert, f"{prefix}.c_system_targets", {"n2": n2, "involutions": involutions},
                     {"sum": system.total, "sum_of_squares": system.square_total},
                     StageVerdict.PASS)

        multisets = enumerate_solutions(system)
        for solution in multisets:
            if sum(solution) != system.total:
                raise IntegrityError(f"{solution} does not sum to {system.total}",
                                     stage=f"{prefix}.enumerate_solutions")
        self._record(cert, f"{prefix}.enumerate_solutions",
                     {"length": system.length, "sum": system.total,
                      "sum_of_squares": system.square_total},
                     {"count": len(multisets), "solutions": [list(s) for s in multisets]},
                     StageVerdict.PASS)

        allowed = allowed_line_weights(m_options, n2)
        self._record(cert, f"{prefix}.allowed_line_weights", {"n2": n2, "m": list(m_options)},
                     {"m_prime": list(allowed)}, StageVerdict.PASS)

        branch = CaseBranch(n2=n2, system=system, m_options=m_options, allowed=allowed,
                            multisets=multisets)
        parity = [parity_excludes(s, allowed) for s in multisets]
        self._record(cert, f"{prefix}.parity_screen", {"n2": n2, "allowed": list(allowed)}, {
            "excluded": [list(s) for s, p in zip(multisets, parity) if p],
            "surviving": [list(s) for s, p in zip(multisets, parity) if not p],
        }, StageVerdict.PASS)
        branch.outcomes = [MultisetOutcome(s, p, -1) for s, p in zip(multisets, parity)]
        return branch

    def _search_branches(
        self,
        cert: Certificate,
        plane: IncidenceStructure,
        jobs: int,
        prune_automorphisms: bool,
    ) -> None:
        """Search every multiset of every branch, parity-excluded ones included."""
        tasks = [
            (branch, outcome)
            for branch in cert.branches
            for outcome in branch.outcomes
        ]
        args = [
            (plane.incidence, outcome.multiset, branch.allowed, prune_automorphisms)
            for branch, outcome in tasks
        ]
        if jobs > 1 and len(args) > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                counts = list(pool.map(_count_assignments, *zip(*args)))
        else:
            counts = [_count_assignments(*a) for a in args]

        for (branch, outcome), count in zip(tasks, counts):
            outcome.assignments = count
            if outcome.parity_excluded and count:
                raise IntegrityError(
                    f"{outcome.multiset} is parity-excluded but has {count} assignments",
                    stage=f"case[n2={branch.n2}].weight_assignment_search",
                )

    @staticmethod
    def _trace_outputs(trace: MaIntersectionTrace) -> dict[str, Any]:
        return {
            "pi": trace.pi,
            "theta": trace.theta,
            "beta1": trace.beta1,
            "delta1": trace.delta1,
            "discriminant": trace.discriminant,
            "candidate_sizes": list(trace.candidate_sizes),
        }

    @staticmethod
    def _record(
        cert: Certificate,
        name: str,
        inputs: dict[str, Any],
        outputs: dict[str, Any],
        verdict: StageVerdict,
    ) -> None:
        cert.stages.append(StageRecord(name=name, inputs=inputs, outputs=outputs, verdict=verdict))
        logger.info("stage %s: %s", name, verdict.value)


# Singleton instance
_pipeline: Optional[CertificatePipeline] = None


def get_certificate_pipeline() -> CertificatePipeline:
    """Get or create the certificate pipeline instance."""
    global _pipeline
    if _pipeline is None:
        _pipeline = CertificatePipeline()
    return _pipeline


def certify(params: PdsParams, jobs: int = 1, prune_automorphisms: bool = False) -> Certificate:
    """Run the full staged argument for ``params``."""
    return get_certificate_pipeline().certify(params, jobs=jobs,
                                              prune_automorphisms=prune_automorphisms)


def certificate_document(cert: Certificate) -> CertificateDocument:
    """The serializable form of a certificate."""
    params = cert.params
    return CertificateDocument(
        params=ParamsDocument(v=params.v, k=params.k, lam=params.lam, mu=params.mu),
        group=cert.group.notation if cert.group is not None else None,
        stages=[
            StageRecordDocument(name=s.name, inputs=s.inputs, outputs=s.outputs,
                                verdict=StageVerdictEnum(s.verdict.value))
            for s in cert.stages
        ],
        branches=[
            CaseBranchDocument(
                n2=b.n2,
                sum=b.system.total,
                sum_of_squares=b.system.square_total,
                m_prime=list(b.allowed),
                multisets=len(b.multisets),
                parity_excluded=sum(1 for o in b.outcomes if o.parity_excluded),
                closed=b.closed,
            )
            for b in cert.branches
        ],
        overall=VerdictEnum(cert.overall.value),
    )
