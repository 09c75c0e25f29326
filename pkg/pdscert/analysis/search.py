"""
PDS Search

Backtracking search for regular PDS in small groups. The search assembles D
from inverse-closed units: multiplier orbits when Delta is a perfect square
(valid by the local multiplier theorem), inverse pairs {g, g^-1} otherwise.
Partial difference counts only grow, so a count above its target prunes.
"""

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from pdscert.analysis.pds import (
    CandidateSet,
    PdsParams,
    is_trivial,
    lmt_orbits,
    verify_pds,
)
from pdscert.core.groups import GroupSpec
from pdscert.errors import IntegrityError, PreconditionError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SearchOptions:
    timeout: Optional[float] = None
    jobs: int = 1
    include_trivial: bool = True
    limit: Optional[int] = None


@dataclass(frozen=True)
class SearchHit:
    candidate: CandidateSet
    trivial: bool


@dataclass
class SearchResult:
    group: GroupSpec
    params: PdsParams
    units: str
    hits: list[SearchHit] = field(default_factory=list)
    complete: bool = True
    explored: int = 0

    @property
    def found(self) -> list[CandidateSet]:
        return [h.candidate for h in self.hits]


class _OutOfTime(Exception):
    pass


def _expired(deadline: Optional[float]) -> bool:
    return deadline is not None and time.time() > deadline


def search_units(group: GroupSpec, params: PdsParams) -> tuple[str, list[list[int]]]:
    """Units of the search as lists of element indices, identity excluded."""
    identity = group.identity
    if params.delta_is_square:
        orbits = [o for o in lmt_orbits(group) if identity not in o]
        return "lmt_orbits", [[group.index(g) for g in orbit] for orbit in orbits]
    seen = set()
    units = []
    for g in group.elements():
        if g == identity or g in seen:
            continue
        pair = sorted({g, group.inverse(g)})
        seen.update(pair)
        units.append([group.index(x) for x in pair])
    return "inverse_pairs", units


def difference_table(group: GroupSpec) -> np.ndarray:
    """table[i, j] = index of g_i g_j^-1."""
    exps = np.array([g.exponents for g in group.elements()], dtype=np.int64).reshape(
        group.order, group.rank
    )
    factors = np.array(group.factors, dtype=np.int64)
    diffs = (exps[:, None, :] - exps[None, :, :]) % factors
    if not group.rank:
        return np.zeros((group.order, group.order), dtype=np.int64)
    return diffs @ np.array(group.strides, dtype=np.int64)


def _search_branch(
    factors: tuple[int, ...],
    params: PdsParams,
    units: list[list[int]],
    first: int,
    deadline: Optional[float],
) -> tuple[list[tuple[int, ...]], bool, int]:
    """All hits whose first included unit is ``units[first]``; ``deadline`` is wall-clock."""
    if _expired(deadline):
        return [], False, 0
    group = GroupSpec(factors)
    table = difference_table(group)
    v, k, lam, mu = params.v, params.k, params.lam, params.mu
    ceiling = max(lam, mu)

    counts = np.zeros(v, dtype=np.int64)
    limit = np.full(v, ceiling, dtype=np.int64)
    chosen: list[int] = []
    hits: list[tuple[int, ...]] = []
    explored = 0

    suffix = [0] * (len(units) + 1)
    for u in range(len(units) - 1, -1, -1):
        suffix[u] = suffix[u + 1] + len(units[u])

    def add(unit: list[int]) -> None:
        for a in unit:
            if chosen:
                np.add.at(counts, table[a, chosen], 1)
                np.add.at(counts, table[chosen, a], 1)
            chosen.append(a)
        limit[unit] = lam

    def remove(unit: list[int]) -> None:
        for a in reversed(unit):
            chosen.pop()
            if chosen:
                np.subtract.at(counts, table[a, chosen], 1)
                np.subtract.at(counts, table[chosen, a], 1)
        limit[unit] = ceiling

    def exact() -> bool:
        target = np.full(v, mu, dtype=np.int64)
        target[chosen] = lam
        target[0] = 0
        return bool(np.array_equal(counts, target))

    def descend(u: int) -> None:
        nonlocal explored
        explored += 1
        if _expired(deadline):
            raise _OutOfTime
        size = len(chosen)
        if size == k:
            if exact():
                hits.append(tuple(sorted(chosen)))
            return
        if u == len(units) or size + suffix[u] < k:
            return
        unit = units[u]
        if size + len(unit) <= k:
            add(unit)
            if not (counts > limit).any():
                descend(u + 1)
            remove(unit)
        # exclude the unit: its elements now need mu
        limit[unit] = mu
        if not (counts[unit] > mu).any():
            descend(u + 1)
        limit[unit] = ceiling

    complete = True
    try:
        for u in range(first):
            limit[units[u]] = mu
        if len(units[first]) <= k:
            add(units[first])
            if not (counts > limit).any():
                descend(first + 1)
    except _OutOfTime:
        complete = False
    return hits, complete, explored


def search_pds(group: GroupSpec, params: PdsParams, options: Optional[SearchOptions] = None) -> SearchResult:
    """
    Find all regular (v,k,lambda,mu)-PDS in ``group`` built from search units.

    Branches are split on the first included unit and may run in worker
    processes; hits are merged into canonical order regardless of scheduling,
    and each is re-verified with the difference spectrum.
    """
    options = options or SearchOptions()
    if group.order != params.v:
        raise PreconditionError(f"|{group.notation}| = {group.order} but v = {params.v}")

    kind, units = search_units(group, params)
    result = SearchResult(group=group, params=params, units=kind)
    logger.debug("search %s in %s over %d %s", params, group.notation, len(units), kind)

    if params.k == 0:
        # only the empty set, a PDS exactly when mu = 0
        branches = [([()] if params.mu == 0 else [], True, 1)]
    else:
        deadline = time.time() + options.timeout if options.timeout is not None else None
        args = [(group.factors, params, units, first, deadline) for first in range(len(units))]
        if options.jobs > 1 and len(args) > 1:
            with ProcessPoolExecutor(max_workers=options.jobs) as pool:
                branches = list(pool.map(_search_branch, *zip(*args)))
        else:
            branches = [_search_branch(*a) for a in args]

    elements = group.elements()
    found = set()
    for hits, complete, explored in branches:
        result.complete = result.complete and complete
        result.explored += explored
        found.update(hits)

    for indices in sorted(found, key=lambda idx: tuple(elements[i] for i in idx)):
        candidate = CandidateSet(group=group, elements=tuple(elements[i] for i in indices))
        report = verify_pds(candidate, params)
        if not report.passed:
            raise IntegrityError(f"search produced a non-PDS: {report.reason}", stage="search")
        if options.limit is not None and len(result.hits) >= options.limit:
            break
        trivial = is_trivial(candidate)
        if trivial and not options.include_trivial:
            continue
        result.hits.append(SearchHit(candidate=candidate, trivial=trivial))

    if not result.complete:
        logger.warning("search in %s stopped at the time limit; results are partial", group.notation)
    logger.info(
        "search %s in %s: %d sets, %d nodes%s",
        params, group.notation, len(result.hits), result.explored,
        "" if result.complete else " (partial)",
    )
    return result
