#!/usr/bin/env python3
"""
Nonemptiness and strict positivity of P(G,b), with certificates both ways.

Infeasibility is witnessed by a tri-partition V = V1 + V2 + V3 with no edge
between V2 u V3 and V3, and with b(V1) < b(V3). Strict positivity fails
exactly when some such partition (V3 may be empty) has b(V1) < b(V3), or has
b(V1) = b(V3) while G[V1, V1 u V2] is nonempty, or b(V1) > b(V3) while it
is empty. On bipartite graphs vertex covers C play the same role
(V1 = C, V2 = {}, V3 = V - C).

Feasible points are built constructively on the bipartite double graph by
augmenting paths, and mapped back edgewise.
"""

import logging
from collections import deque
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import product
from typing import ClassVar, Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

import config
from errors import CapExceededError, EmptyEdgeSetError, VerificationError
from graph_structure import analyze_components
from multigraph import (BVector, Edge, EdgeId, EdgeVector, MultiGraph, VertexId, edge_set_between,
                        incidence_sums, make_bvector)
from polytope import check_enumeration_caps, enumerate_vertices
from rational_linalg import ZERO

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Feasible:
    point: EdgeVector
    feasible: ClassVar[bool] = True


@dataclass(frozen=True)
class InfeasiblePartition:
    v1: Tuple[VertexId, ...]
    v2: Tuple[VertexId, ...]
    v3: Tuple[VertexId, ...]
    feasible: ClassVar[bool] = False


NonemptinessCertificate = Union[Feasible, InfeasiblePartition]


class BlockingKind(str, Enum):
    STRICT_FAIL = 'StrictFail'
    EQUALITY_FAIL = 'EqualityFail'


@dataclass(frozen=True)
class Positive:
    point: EdgeVector
    positive: ClassVar[bool] = True


@dataclass(frozen=True)
class Blocking:
    v1: Tuple[VertexId, ...]
    v2: Tuple[VertexId, ...]
    v3: Tuple[VertexId, ...]
    kind: BlockingKind
    positive: ClassVar[bool] = False


PositivityCertificate = Union[Positive, Blocking]


@dataclass(frozen=True)
class CoverViolation:
    cover: Tuple[VertexId, ...]
    rest: Tuple[VertexId, ...]
    cover_sum: Fraction
    rest_sum: Fraction
    kind: BlockingKind


def _check_vertex_cap(g: MultiGraph, max_vertices: Optional[int]):
    limit = config.resolve_cap(max_vertices, config.MAX_VERTICES)
    if len(g.vertices) > limit:
        raise CapExceededError('vertex', limit, len(g.vertices), '--max-vertices', 'BMATCH_MAX_VERTICES')


def _positivity_clause(low: Fraction, high: Fraction, touching: bool) -> Optional[BlockingKind]:
    """
    The clause shared by both positivity criteria: low >= high, with equality
    iff the relevant edge set is empty. touching says whether it is nonempty.
    """
    if low < high:
        return BlockingKind.STRICT_FAIL
    if (low == high) == touching:
        return BlockingKind.EQUALITY_FAIL
    return None


# ---------------------------------------------------------------------------
# Reductions
# ---------------------------------------------------------------------------

def reduce_multi_edges(g: MultiGraph) -> Tuple[MultiGraph, Dict[EdgeId, EdgeId]]:
    """
    Keep one edge per adjacent pair (and one loop per vertex).

    Returns the reduced graph and the map sending every old edge to the
    surviving edge for its endpoints. Both P(G,b)-nonemptiness and strict
    positivity are unchanged by this reduction.
    """
    representative: Dict[frozenset, EdgeId] = {}
    mapping: Dict[EdgeId, EdgeId] = {}
    kept: List[Edge] = []
    for e in g.edges:
        key = frozenset(e.ends)
        if key not in representative:
            representative[key] = e.id
            kept.append(e)
        mapping[e.id] = representative[key]
    return MultiGraph(g.vertices, kept), mapping


@dataclass(frozen=True)
class DoubleGraph:
    """
    Bipartite double of a graph. Vertex (v, i) is named "v|i" and edge (e, i)
    is named "e|i". Edge (e,1) joins (u,1)-(w,2) and (e,2) joins (w,1)-(u,2),
    so a loop turns into two parallel edges.
    """
    source: MultiGraph
    graph: MultiGraph
    b: BVector

    @staticmethod
    def vertex_name(v: VertexId, side: int) -> VertexId:
        return f"{v}|{side}"

    @staticmethod
    def edge_name(e: EdgeId, side: int) -> EdgeId:
        return f"{e}|{side}"

    def multiplicity(self, e: EdgeId) -> int:
        """mu_e: 2 for a nonloop, 1 for a loop."""
        return 1 if self.source.edge(e).is_loop else 2

    def project(self, x_double: Mapping[EdgeId, Fraction]) -> EdgeVector:
        """x_e = (x'(e,1) + x'(e,2)) / mu_e, mapping P(G',b') onto P(G,b)."""
        return {
            e: (x_double[self.edge_name(e, 1)] + x_double[self.edge_name(e, 2)]) / self.multiplicity(e)
            for e in self.source.edge_ids
        }

    def lift(self, x: Mapping[EdgeId, Fraction]) -> EdgeVector:
        """x'(e,i) = x_e * mu_e / 2, mapping P(G,b) into P(G',b')."""
        lifted = {}
        for e in self.source.edge_ids:
            value = Fraction(x[e]) * self.multiplicity(e) / 2
            lifted[self.edge_name(e, 1)] = value
            lifted[self.edge_name(e, 2)] = value
        return lifted

    def correspondence(self) -> Dict[EdgeId, Dict]:
        return {
            e: {
                'copies': [self.edge_name(e, 1), self.edge_name(e, 2)],
                'mu': self.multiplicity(e),
            }
            for e in self.source.edge_ids
        }


def bipartite_double(g: MultiGraph, b: Mapping[VertexId, Fraction]) -> DoubleGraph:
    b = make_bvector(g, b)
    name = DoubleGraph.vertex_name
    vertices = [name(v, 1) for v in g.vertices] + [name(v, 2) for v in g.vertices]
    edges = []
    for e in g.edges:
        u, w = e.ends
        edges.append(Edge(DoubleGraph.edge_name(e.id, 1), (name(u, 1), name(w, 2))))
        edges.append(Edge(DoubleGraph.edge_name(e.id, 2), (name(w, 1), name(u, 2))))
    double_b = {name(v, side): b[v] for side in (1, 2) for v in g.vertices}
    return DoubleGraph(source=g, graph=MultiGraph(vertices, edges), b=double_b)


# ---------------------------------------------------------------------------
# Exhaustive conditions
# ---------------------------------------------------------------------------

def _vertex_covers(g: MultiGraph) -> Iterator[Tuple[Tuple[VertexId, ...], Tuple[VertexId, ...]]]:
    """(cover, rest) for every vertex cover, in bitmask order over canonical vertices."""
    n = len(g.vertices)
    ends = [(g.vertex_index(e.ends[0]), g.vertex_index(e.ends[1])) for e in g.edges]
    for mask in range(1 << n):
        if all(mask >> i & 1 or mask >> j & 1 for i, j in ends):
            cover = tuple(v for i, v in enumerate(g.vertices) if mask >> i & 1)
            rest = tuple(v for i, v in enumerate(g.vertices) if not mask >> i & 1)
            yield cover, rest


def vertex_cover_violation(g: MultiGraph, b: Mapping[VertexId, Fraction],
                           strict: bool = False, max_vertices: Optional[int] = None) -> Optional[CoverViolation]:
    """
    First vertex cover C breaking b(C) >= b(V - C).

    With strict=True the positivity form is used: the inequality must hold,
    with equality iff V - C is a vertex cover too. Necessary on every graph,
    sufficient on bipartite ones.
    """
    b = make_bvector(g, b)
    _check_vertex_cap(g, max_vertices)
    for cover, rest in _vertex_covers(g):
        cover_sum = sum((b[v] for v in cover), ZERO)
        rest_sum = sum((b[v] for v in rest), ZERO)
        if strict:
            kind = _positivity_clause(cover_sum, rest_sum, bool(edge_set_between(g, cover, cover)))
        else:
            kind = BlockingKind.STRICT_FAIL if cover_sum < rest_sum else None
        if kind is not None:
            return CoverViolation(cover, rest, cover_sum, rest_sum, kind)
    return None


def _tri_partitions(g: MultiGraph, nonempty_v3: bool) -> Iterator[Tuple[int, ...]]:
    """
    Labelings (0 -> V1, 1 -> V2, 2 -> V3) in itertools.product order that
    satisfy G[V2 u V3, V3] = {}.
    """
    ends = {(g.vertex_index(e.ends[0]), g.vertex_index(e.ends[1])) for e in g.edges}
    for labels in product(range(3), repeat=len(g.vertices)):
        if nonempty_v3 and 2 not in labels:
            continue
        if any((labels[i] == 2 and labels[j] != 0) or (labels[j] == 2 and labels[i] != 0) for i, j in ends):
            continue
        yield labels


def _split(g: MultiGraph, labels: Sequence[int]) -> Tuple[Tuple[VertexId, ...], ...]:
    return tuple(tuple(v for v, label in zip(g.vertices, labels) if label == part) for part in range(3))


def is_valid_partition(g: MultiGraph, v1, v2, v3) -> bool:
    """V is the disjoint union of the three parts and G[V2 u V3, V3] = {}."""
    parts = [g.check_vertices(p) for p in (v1, v2, v3)]
    if sum(len(p) for p in parts) != len(g.vertices) or frozenset().union(*parts) != set(g.vertices):
        return False
    return not edge_set_between(g, parts[1] | parts[2], parts[2])


def first_blocking_partition(g: MultiGraph, b: Mapping[VertexId, Fraction],
                             max_vertices: Optional[int] = None) -> Optional[Blocking]:
    """
    First tri-partition (V3 may be empty) breaking b(V1) >= b(V3) with
    equality iff G[V1, V1 u V2] = {}. None means a strictly positive point exists
    (for graphs with at least one edge).
    """
    b = make_bvector(g, b)
    _check_vertex_cap(g, max_vertices)
    weights = [b[v] for v in g.vertices]
    ends = {(g.vertex_index(e.ends[0]), g.vertex_index(e.ends[1])) for e in g.edges}
    for labels in _tri_partitions(g, nonempty_v3=False):
        low = sum((w for w, label in zip(weights, labels) if label == 0), ZERO)
        high = sum((w for w, label in zip(weights, labels) if label == 2), ZERO)
        touching = any(
            (labels[i] == 0 and labels[j] != 2) or (labels[j] == 0 and labels[i] != 2) for i, j in ends
        )
        kind = _positivity_clause(low, high, touching)
        if kind is not None:
            v1, v2, v3 = _split(g, labels)
            return Blocking(v1, v2, v3, kind)
    return None


# ---------------------------------------------------------------------------
# Constructive point finder
# ---------------------------------------------------------------------------

def _partition_from_reach(g: MultiGraph, reached) -> InfeasiblePartition:
    """
    Turn the set reachable from the deficient U-side vertices into a
    certificate: A2 = {v : (v,1) reached}, B1 = {v : (v,2) reached},
    V1 = B1 - A2, V3 = A2 - B1, V2 = the rest.
    """
    a2 = {v for v in g.vertices if DoubleGraph.vertex_name(v, 1) in reached}
    b1 = {v for v in g.vertices if DoubleGraph.vertex_name(v, 2) in reached}
    v1 = g.ordered_vertices(b1 - a2)
    v3 = g.ordered_vertices(a2 - b1)
    v2 = g.ordered_vertices(set(g.vertices) - set(v1) - set(v3))
    return InfeasiblePartition(v1, v2, v3)


def find_point(g: MultiGraph, b: Mapping[VertexId, Fraction]) -> NonemptinessCertificate:
    """
    Augmenting-path search for a point of P(G,b).

    Works on the bipartite double graph with U = V x {1}, W = V x {2}, from
    x = 0. Each round runs a multi-source BFS from the deficient U vertices:
    U -> W steps are free, W -> U steps need positive flow. A path to a
    deficient W vertex is augmented by the largest feasible amount. When no
    path exists the reachable set yields an infeasibility certificate.
    """
    b = make_bvector(g, b)
    double = bipartite_double(g, b)
    d = double.graph
    u_side = [DoubleGraph.vertex_name(v, 1) for v in g.vertices]
    is_u = set(u_side)

    x = {eid: ZERO for eid in d.edge_ids}
    load = {v: ZERO for v in d.vertices}
    rounds = 0

    def deficiency(v):
        return double.b[v] - load[v]

    while True:
        sources = [u for u in u_side if deficiency(u) > 0]
        if not sources:
            break

        via: Dict[VertexId, Optional[Tuple[EdgeId, VertexId]]] = {s: None for s in sources}
        queue = deque(sources)
        target = None
        while queue and target is None:
            v = queue.popleft()
            for eid in d.delta(v):
                w = d.edge(eid).other(v)
                if w in via or (v not in is_u and x[eid] == 0):
                    continue
                via[w] = (eid, v)
                if w not in is_u and deficiency(w) > 0:
                    target = w
                    break
                queue.append(w)

        if target is None:
            certificate = _partition_from_reach(g, via)
            logger.debug("find_point: no augmenting path after %d rounds; %s", rounds, certificate)
            return certificate

        path = []
        v = target
        while via[v] is not None:
            eid, prev = via[v]
            path.append((eid, prev))
            v = via[v][1]
        source = v
        eps = min([deficiency(source), deficiency(target)] + [x[eid] for eid, prev in path if prev not in is_u])
        for eid, prev in path:
            x[eid] += eps if prev in is_u else -eps
        load[source] += eps
        load[target] += eps
        rounds += 1

    point = double.project(x)
    if incidence_sums(g, point) != b or any(value < 0 for value in point.values()):
        raise VerificationError(f"❌ Augmenting-path point is not in P(G,b) for {g!r}")
    logger.debug("find_point: feasible after %d augmentations", rounds)
    return Feasible(point)


# ---------------------------------------------------------------------------
# Decision procedures
# ---------------------------------------------------------------------------

def _verify_infeasible(g: MultiGraph, b: BVector, p: InfeasiblePartition):
    v1_sum = sum((b[v] for v in p.v1), ZERO)
    v3_sum = sum((b[v] for v in p.v3), ZERO)
    if not is_valid_partition(g, p.v1, p.v2, p.v3) or not v1_sum < v3_sum:
        raise VerificationError(f"❌ Infeasibility certificate does not hold: {p}")


def check_nonempty(g: MultiGraph, b: Mapping[VertexId, Fraction],
                   max_vertices: Optional[int] = None) -> NonemptinessCertificate:
    """
    Decide P(G,b) != {} by exhaustive enumeration.

    Bipartite graphs walk vertex covers; other graphs walk tri-partitions
    with V3 nonempty. The first violation in canonical order is returned;
    otherwise the point comes from find_point.
    """
    b = make_bvector(g, b)
    _check_vertex_cap(g, max_vertices)
    report = analyze_components(g)
    bipartite = report.bipartite_count == len(report.components)

    certificate: Optional[InfeasiblePartition] = None
    if bipartite:
        violation = vertex_cover_violation(g, b, max_vertices=max_vertices)
        if violation is not None:
            certificate = InfeasiblePartition(violation.cover, (), violation.rest)
    else:
        weights = [b[v] for v in g.vertices]
        for labels in _tri_partitions(g, nonempty_v3=True):
            low = sum((w for w, label in zip(weights, labels) if label == 0), ZERO)
            high = sum((w for w, label in zip(weights, labels) if label == 2), ZERO)
            if low < high:
                certificate = InfeasiblePartition(*_split(g, labels))
                break

    if config.DEBUG_CHECKS:
        found = find_point(g, b)
        if found.feasible != (certificate is None):
            raise VerificationError(
                f"❌ Enumeration and augmenting paths disagree on nonemptiness for {g!r}"
            )
        if found.feasible and vertex_cover_violation(g, b, max_vertices=max_vertices) is not None:
            raise VerificationError("❌ Feasible instance breaks the vertex-cover necessary condition")

    if certificate is not None:
        _verify_infeasible(g, b, certificate)
        return certificate

    result = find_point(g, b)
    if not result.feasible:
        raise VerificationError(f"❌ Enumeration found no violation but no point was built for {g!r}")
    return result


def check_strictly_positive(g: MultiGraph, b: Mapping[VertexId, Fraction],
                            max_vertices: Optional[int] = None,
                            max_edges: Optional[int] = None) -> PositivityCertificate:
    """
    Decide whether P(G,b) has a point with every coordinate positive.

    Always walks the general tri-partitions, V3 = {} included. The witness
    is the mean of all polytope vertices, whose support is the union of all
    vertex supports, i.e. all of E.
    """
    b = make_bvector(g, b)
    if not g.edges:
        raise EmptyEdgeSetError()
    # witness comes from enumerate_vertices; hit its caps before the sweep
    check_enumeration_caps(g, max_vertices, max_edges)

    blocking = first_blocking_partition(g, b, max_vertices=max_vertices)

    report = analyze_components(g)
    if config.DEBUG_CHECKS and report.bipartite_count == len(report.components):
        cover = vertex_cover_violation(g, b, strict=True, max_vertices=max_vertices)
        if (cover is None) != (blocking is None):
            raise VerificationError("❌ Vertex-cover and tri-partition positivity tests disagree")

    if blocking is not None:
        return blocking

    vertices = enumerate_vertices(g, b, max_vertices=max_vertices, max_edges=max_edges)
    if not vertices:
        raise VerificationError(f"❌ Positivity holds but no vertex was enumerated for {g!r}")
    count = len(vertices)
    witness = {e: sum((u.coords[e] for u in vertices), ZERO) / count for e in g.edge_ids}
    if any(value <= 0 for value in witness.values()) or incidence_sums(g, witness) != b:
        raise VerificationError("❌ Vertex mean is not a strictly positive point of P(G,b)")
    return Positive(witness)
