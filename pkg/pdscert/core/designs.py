"""
Incidence Structures

Builds the 13-point plane whose points are the subgroups P x N (P of order 3)
and whose blocks are the subgroups L x N (L of order 9), checks the
2-(13,4,1) axioms, weighs points by a candidate set and searches weight
assignments with constrained block weights.
"""

import itertools
import logging
from collections import Counter
from dataclasses import dataclass
from typing import Any, Iterable, Optional

import networkx as nx
import numpy as np

from pdscert.core.groups import GroupElement, GroupSpec, Subgroup, subgroup_product
from pdscert.errors import (
    EmptySylowError,
    IntegrityError,
    PreconditionError,
    StructuralError,
    UnsupportedStructureError,
)

logger = logging.getLogger(__name__)

PLANE_ORDER = 3
PLANE_POINTS = PLANE_ORDER ** 2 + PLANE_ORDER + 1
LINE_SIZE = PLANE_ORDER + 1


@dataclass(frozen=True, eq=False)
class IncidenceStructure:
    """
    Points, blocks and a point x block boolean incidence matrix.

    Labels are the underlying subgroups for ``build_plane`` and coordinate
    vectors for ``projective_plane_direct``. ``base`` is the subgroup N that
    every point and block contains (None when not built from a group).
    """
    points: tuple[Any, ...]
    blocks: tuple[Any, ...]
    incidence: np.ndarray
    base: Optional[Subgroup] = None

    @property
    def num_points(self) -> int:
        return len(self.points)

    @property
    def num_blocks(self) -> int:
        return len(self.blocks)

    def block_points(self, j: int) -> tuple[int, ...]:
        return tuple(int(i) for i in np.flatnonzero(self.incidence[:, j]))

    def point_blocks(self, i: int) -> tuple[int, ...]:
        return tuple(int(j) for j in np.flatnonzero(self.incidence[i, :]))

    @property
    def block_sizes(self) -> list[int]:
        return [int(x) for x in self.incidence.sum(axis=0)]

    @property
    def point_degrees(self) -> list[int]:
        return [int(x) for x in self.incidence.sum(axis=1)]

    def pair_counts(self) -> np.ndarray:
        """Number of common blocks for each pair of points."""
        m = self.incidence.astype(np.int64)
        return m @ m.T


def design_violations(
    plane: IncidenceStructure,
    points: int = PLANE_POINTS,
    block_size: int = LINE_SIZE,
    lam: int = 1,
) -> list[str]:
    """Every way the structure fails to be a 2-(points, block_size, lam) design."""
    problems = []
    if plane.num_points != points:
        problems.append(f"{plane.num_points} points, expected {points}")
    if plane.num_blocks != points:
        problems.append(f"{plane.num_blocks} blocks, expected {points}")
    for j, size in enumerate(plane.block_sizes):
        if size != block_size:
            problems.append(f"block {j} has {size} points, expected {block_size}")
    for i, degree in enumerate(plane.point_degrees):
        if degree != block_size:
            problems.append(f"point {i} lies on {degree} blocks, expected {block_size}")
    pairs = plane.pair_counts()
    for i, k in itertools.combinations(range(plane.num_points), 2):
        if pairs[i, k] != lam:
            problems.append(f"points {i},{k} share {int(pairs[i, k])} blocks, expected {lam}")
    return problems


def build_plane(group: GroupSpec) -> IncidenceStructure:
    """
    The plane of subgroups P_i x N (points) and L_i x N (blocks).

    The Sylow-3 part must be elementary Abelian of rank 3. N is the
    Sylow-2 subgroup, or the trivial subgroup for groups of odd order.
    """
    try:
        points3 = group.elementary_subgroups(PLANE_ORDER, 1)
        lines3 = group.elementary_subgroups(PLANE_ORDER, 2)
    except (EmptySylowError, UnsupportedStructureError) as e:
        raise StructuralError(f"cannot build the plane in {group.notation}: {e}") from e
    if len(group.sylow_positions(PLANE_ORDER)) != 3:
        raise StructuralError(
            f"Sylow-3 part of {group.notation} has rank "
            f"{len(group.sylow_positions(PLANE_ORDER))}, need 3"
        )

    base = group.sylow_subgroup(2) if group.order % 2 == 0 else Subgroup.trivial(group)
    points = tuple(subgroup_product(p, base) for p in points3)
    blocks = tuple(subgroup_product(line, base) for line in lines3)
    incidence = np.array(
        [[p.issubset(b) for b in blocks] for p in points],
        dtype=bool,
    )
    plane = IncidenceStructure(points=points, blocks=blocks, incidence=incidence, base=base)

    problems = design_violations(plane)
    if problems:
        raise IntegrityError("; ".join(problems[:5]), stage="plane")
    logger.debug(
        "plane in %s: %d points of order %d, %d blocks of order %d",
        group.notation, len(points), points[0].order, len(blocks), blocks[0].order,
    )
    return plane


def _normalized_vectors(q: int, dim: int) -> list[tuple[int, ...]]:
    """Nonzero vectors over GF(q) whose first nonzero coordinate is 1."""
    out = []
    for v in itertools.product(range(q), repeat=dim):
        nonzero = [x for x in v if x]
        if nonzero and nonzero[0] == 1:
            out.append(v)
    return out


def projective_plane_direct(q: int = PLANE_ORDER) -> IncidenceStructure:
    """PG(2,q) for prime q: 1-spaces as points, 2-spaces (as dual vectors) as lines."""
    points = _normalized_vectors(q, 3)
    lines = _normalized_vectors(q, 3)
    point_coords = np.array(points, dtype=np.int64)
    line_coords = np.array(lines, dtype=np.int64)
    incidence = (point_coords @ line_coords.T) % q == 0
    return IncidenceStructure(points=tuple(points), blocks=tuple(lines), incidence=incidence)


def incidence_graph(plane: IncidenceStructure) -> nx.Graph:
    """Bipartite point/block graph with a ``kind`` attribute on every node."""
    graph = nx.Graph()
    graph.add_nodes_from((("p", i), {"kind": "point"}) for i in range(plane.num_points))
    graph.add_nodes_from((("b", j), {"kind": "block"}) for j in range(plane.num_blocks))
    rows, cols = np.nonzero(plane.incidence)
    graph.add_edges_from((("p", int(i)), ("b", int(j))) for i, j in zip(rows, cols))
    return graph


def plane_fingerprint(plane: IncidenceStructure) -> str:
    return nx.weisfeiler_lehman_graph_hash(incidence_graph(plane), node_attr="kind")


def planes_isomorphic(a: IncidenceStructure, b: IncidenceStructure) -> bool:
    """Isomorphism of incidence graphs mapping points to points and blocks to blocks."""
    ga, gb = incidence_graph(a), incidence_graph(b)
    if nx.weisfeiler_lehman_graph_hash(ga, node_attr="kind") != nx.weisfeiler_lehman_graph_hash(
        gb, node_attr="kind"
    ):
        return False
    return nx.is_isomorphic(ga, gb, node_match=lambda x, y: x["kind"] == y["kind"])


def format_plane(plane: IncidenceStructure) -> str:
    """One block per line: its point indices, 0-based, ascending."""
    return "\n".join(
        " ".join(str(i) for i in plane.block_points(j)) for j in range(plane.num_blocks)
    ) + "\n"


# ============= Weights =============

@dataclass(frozen=True)
class WeightAssignment:
    """Point weights and the derived block weights (sum over incident points)."""
    weights: tuple[int, ...]
    block_weights: tuple[int, ...]

    @classmethod
    def on(cls, plane: IncidenceStructure, weights: Iterable[int]) -> "WeightAssignment":
        weights = tuple(int(w) for w in weights)
        if len(weights) != plane.num_points:
            raise PreconditionError(
                f"{len(weights)} weights for a structure with {plane.num_points} points"
            )
        block_weights = plane.incidence.T.astype(np.int64) @ np.array(weights, dtype=np.int64)
        return cls(weights=weights, block_weights=tuple(int(x) for x in block_weights))

    @property
    def total(self) -> int:
        return sum(self.weights)


def point_weights(candidate: Iterable[GroupElement], plane: IncidenceStructure) -> WeightAssignment:
    """weight(p_i) = |((P_i x N) minus N) meet D| / 2."""
    if plane.base is None:
        raise StructuralError("point weights need a plane built from a group")
    members = set(candidate)
    weights = []
    for i, point in enumerate(plane.points):
        hits = sum(1 for g in point.elements if g in members and g not in plane.base)
        if hits % 2:
            raise IntegrityError(
                f"point {i} meets D outside N in {hits} elements (odd); D is not LMT-closed",
                stage="point_weights",
            )
        weights.append(hits // 2)
    return WeightAssignment.on(plane, weights)


def parity_identity_check(assignment: WeightAssignment, plane: IncidenceStructure) -> bool:
    """
    Check  sum_j C_j = C_i + sum_{B through i} (w(B) - C_i)  for every point i.

    Holds in any structure where each other point shares exactly one block
    with i, so a failure means the structure is not a plane.
    """
    total = assignment.total
    for i in range(plane.num_points):
        c = assignment.weights[i]
        rhs = c + sum(assignment.block_weights[j] - c for j in plane.point_blocks(i))
        if rhs != total:
            return False
    return True


def parity_excludes(multiset: Iterable[int], allowed: Iterable[int]) -> bool:
    """
    True when the odd-weight argument rules the multiset out.

    With all block weights even, the identity above forces every point
    weight to have the parity of the total, so any entry of the other
    parity is impossible.
    """
    values = list(multiset)
    allowed = list(allowed)
    if not all(w % 2 == 0 for w in allowed):
        return False
    parity = sum(values) % 2
    return any(c % 2 != parity for c in values)


def _search_order(plane: IncidenceStructure) -> list[int]:
    """Greedy point order that completes blocks as early as possible."""
    order: list[int] = []
    placed: set[int] = set()
    block_sets = [set(plane.block_points(j)) for j in range(plane.num_blocks)]
    while len(order) < plane.num_points:
        def score(i: int) -> tuple[int, int, int]:
            after = placed | {i}
            complete = sum(1 for b in block_sets if i in b and b <= after)
            touched = max((len(b & after) for b in block_sets if i in b), default=0)
            return (complete, touched, -i)
        best = max((i for i in range(plane.num_points) if i not in placed), key=score)
        order.append(best)
        placed.add(best)
    return order


def weight_assignment_search(
    plane: IncidenceStructure,
    multiset: Iterable[int],
    allowed: Iterable[int],
    prune_automorphisms: bool = False,
) -> list[WeightAssignment]:
    """
    All distinct placements of the multiset on the points such that every
    block weight lies in ``allowed``.

    Results are indexed by canonical point order and sorted lexicographically
    descending. With ``prune_automorphisms`` only placements with a largest
    value on point 0 are returned; the plane's collineation group is
    point-transitive, so the result is empty exactly when the full one is.
    """
    values = [int(c) for c in multiset]
    if len(values) != plane.num_points:
        raise PreconditionError(
            f"multiset has {len(values)} entries, structure has {plane.num_points} points"
        )
    allowed = frozenset(int(w) for w in allowed)
    if not allowed and plane.num_blocks:
        return []
    hi = max(allowed) if allowed else 0
    lo = min(allowed) if allowed else 0

    remaining = Counter(values)
    distinct = sorted(remaining, reverse=True)
    top = distinct[0] if distinct else 0
    order = _search_order(plane)
    if prune_automorphisms:
        order.remove(0)
        order.insert(0, 0)
    incident = [plane.point_blocks(i) for i in range(plane.num_points)]
    partial = [0] * plane.num_blocks
    open_slots = plane.block_sizes
    weights = [0] * plane.num_points
    found: list[tuple[int, ...]] = []

    def feasible(point: int) -> bool:
        live = [c for c in distinct if remaining[c]]
        most = live[0] if live else 0
        least = live[-1] if live else 0
        for j in incident[point]:
            if open_slots[j] == 0:
                if partial[j] not in allowed:
                    return False
            elif partial[j] + open_slots[j] * least > hi or partial[j] + open_slots[j] * most < lo:
                return False
        return True

    def place(depth: int) -> None:
        if depth == len(order):
            found.append(tuple(weights))
            return
        point = order[depth]
        for c in distinct:
            if not remaining[c]:
                continue
            if prune_automorphisms and depth == 0 and c != top:
                continue
            remaining[c] -= 1
            for j in incident[point]:
                partial[j] += c
                open_slots[j] -= 1
            if feasible(point):
                weights[point] = c
                place(depth + 1)
            for j in incident[point]:
                partial[j] -= c
                open_slots[j] += 1
            remaining[c] += 1

    place(0)
    found.sort(reverse=True)
    return [WeightAssignment.on(plane, w) for w in found]
