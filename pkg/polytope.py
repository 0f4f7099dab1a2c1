#!/usr/bin/env python3
"""
Polytope-level queries on P(G,b): vertices, dimension, graph, adjacency.

A point of P(G,b) is a vertex iff each component of its support graph is a
tree or odd-unicyclic, and then it is the only point of P(G,b) with that
support; the closed-form solver recovers it from the support alone. Two
vertices are adjacent iff the union of their supports has incidence
nullity 1.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

import config
from errors import CapExceededError, PreconditionError, VerificationError
from flow_solver import flow_balance_check, unique_solve
from graph_structure import (NULLITY_ONE_CLASSES, NULLITY_ZERO_CLASSES, analyze_components,
                             classify_cycle_structure, has_zero_nullity, incidence_nullity)
from multigraph import (BVector, EdgeId, EdgeSet, EdgeVector, MultiGraph, VertexId, adjacency_row_sums,
                        make_bvector, make_edge_vector, support)
from rational_linalg import ZERO

logger = logging.getLogger(__name__)


class VertexReason(str, Enum):
    VERTEX = 'vertex'
    NEGATIVE_ENTRY = 'negative-entry'
    DEMAND_MISMATCH = 'demand-mismatch'
    CYCLIC_SUPPORT = 'support-not-acyclic-or-odd-unicyclic'


@dataclass(frozen=True)
class VertexVerdict:
    is_vertex: bool
    reason: VertexReason

    def __bool__(self):
        return self.is_vertex


@dataclass(frozen=True)
class VertexPoint:
    coords: EdgeVector
    support: EdgeSet

    @classmethod
    def from_coords(cls, g: MultiGraph, x: Mapping[EdgeId, Fraction]) -> 'VertexPoint':
        coords = make_edge_vector(g, x)
        return cls(coords, support(coords))


@dataclass(frozen=True)
class PolytopeSummary:
    nonempty: bool
    dimension: int
    graph: EdgeSet
    bipartite_count: int


def support_key(g: MultiGraph, edges) -> Tuple[int, ...]:
    """Canonical sort key of an edge set: its sorted edge positions."""
    return tuple(sorted(g.edge_index(e) for e in edges))


def membership_reason(g: MultiGraph, b: Mapping[VertexId, Fraction],
                      x: Mapping[EdgeId, Fraction]) -> Optional[VertexReason]:
    """None when x is in P(G,b): A_G(x) nonnegative with row sums b."""
    b = make_bvector(g, b)
    x = make_edge_vector(g, x)
    if any(value < 0 for value in x.values()):
        return VertexReason.NEGATIVE_ENTRY
    if adjacency_row_sums(g, x) != b:
        return VertexReason.DEMAND_MISMATCH
    return None


def in_polytope(g: MultiGraph, b: Mapping[VertexId, Fraction], x: Mapping[EdgeId, Fraction]) -> bool:
    return membership_reason(g, b, x) is None


def vertex_from_graph(g: MultiGraph, b: Mapping[VertexId, Fraction], h) -> Optional[EdgeVector]:
    """
    The vertex of P(G,b) whose graph is H, if there is one.

    Solves I_H y = b in closed form on H and accepts y (extended by zeros)
    only when it is strictly positive on every edge of H.
    """
    b = make_bvector(g, b)
    h = g.check_edges(h)
    if not has_zero_nullity(g, g.ordered_edges(h)):
        return None
    sub = g.subgraph(h)
    if not flow_balance_check(sub, b):
        return None

    y = unique_solve(sub, b)
    if any(y[e] <= 0 for e in h):
        return None
    x = {eid: ZERO for eid in g.edge_ids}
    x.update(y)
    if adjacency_row_sums(g, x) != b:
        return None
    return x


def check_enumeration_caps(g: MultiGraph, max_vertices: Optional[int], max_edges: Optional[int]):
    vertex_limit = config.resolve_cap(max_vertices, config.ENUM_MAX_VERTICES)
    if len(g.vertices) > vertex_limit:
        raise CapExceededError('vertex', vertex_limit, len(g.vertices), '--max-vertices', 'BMATCH_ENUM_MAX_VERTICES')
    edge_limit = config.resolve_cap(max_edges, config.MAX_EDGES)
    if len(g.edges) > edge_limit:
        raise CapExceededError('edge', edge_limit, len(g.edges), '--max-edges', 'BMATCH_MAX_EDGES')


def enumerate_vertices(g: MultiGraph, b: Mapping[VertexId, Fraction],
                       max_vertices: Optional[int] = None, max_edges: Optional[int] = None) -> List[VertexPoint]:
    """
    All vertices of P(G,b), sorted by support.

    Candidate supports are edge subsets of size at most |V| with incidence
    nullity 0. Edges touching a vertex with b_v = 0 can never carry weight,
    and every vertex with b_v > 0 must be touched, so both are used to prune
    before any solve.
    """
    b = make_bvector(g, b)
    check_enumeration_caps(g, max_vertices, max_edges)

    positive = {v for v in g.vertices if b[v] > 0}
    candidates = [e.id for e in g.edges if all(v in positive for v in e.ends)]
    first_size = (len(positive) + 1) // 2
    last_size = min(len(g.vertices), len(candidates))

    found: Dict[EdgeSet, EdgeVector] = {}
    tried = 0
    for size in range(first_size, last_size + 1):
        for subset in combinations(candidates, size):
            touched = {v for eid in subset for v in g.edge(eid).ends}
            if touched != positive or not has_zero_nullity(g, subset):
                continue
            tried += 1
            x = vertex_from_graph(g, b, subset)
            if x is not None:
                found[frozenset(subset)] = x

    logger.debug("enumerate_vertices: %d supports solved, %d vertices", tried, len(found))
    points = [VertexPoint(x, s) for s, x in found.items()]
    points.sort(key=lambda u: support_key(g, u.support))
    return points


def is_vertex(g: MultiGraph, b: Mapping[VertexId, Fraction], x: Mapping[EdgeId, Fraction]) -> VertexVerdict:
    """Membership first, then the support must be a forest of trees and odd-unicyclic parts."""
    x = make_edge_vector(g, x)
    reason = membership_reason(g, b, x)
    if reason is not None:
        return VertexVerdict(False, reason)
    tags = classify_cycle_structure(g.subgraph(support(x)))
    if all(tag in NULLITY_ZERO_CLASSES for tag in tags):
        return VertexVerdict(True, VertexReason.VERTEX)
    return VertexVerdict(False, VertexReason.CYCLIC_SUPPORT)


def polytope_graph(g: MultiGraph, b: Mapping[VertexId, Fraction],
                   max_vertices: Optional[int] = None, max_edges: Optional[int] = None) -> EdgeSet:
    """gr(P(G,b)): the union of all vertex supports (empty for an empty polytope)."""
    vertices = enumerate_vertices(g, b, max_vertices=max_vertices, max_edges=max_edges)
    return frozenset().union(*(u.support for u in vertices))


def summarize(g: MultiGraph, b: Mapping[VertexId, Fraction],
              max_vertices: Optional[int] = None, max_edges: Optional[int] = None) -> PolytopeSummary:
    vertices = enumerate_vertices(g, b, max_vertices=max_vertices, max_edges=max_edges)
    graph = frozenset().union(*(u.support for u in vertices))
    count = analyze_components(g.subgraph(graph)).bipartite_count
    if not vertices:
        return PolytopeSummary(False, -1, graph, count)
    return PolytopeSummary(True, len(graph) - len(g.vertices) + count, graph, count)


def dimension(g: MultiGraph, b: Mapping[VertexId, Fraction],
              max_vertices: Optional[int] = None, max_edges: Optional[int] = None) -> int:
    """|E(gr P)| - |V| + B(gr P), or -1 when P(G,b) is empty."""
    return summarize(g, b, max_vertices=max_vertices, max_edges=max_edges).dimension


def _as_point(g: MultiGraph, u: Union[VertexPoint, Mapping[EdgeId, Fraction]]) -> VertexPoint:
    return u if isinstance(u, VertexPoint) else VertexPoint.from_coords(g, u)


def is_edge_pair(g: MultiGraph, b: Mapping[VertexId, Fraction],
                 u: Union[VertexPoint, Mapping[EdgeId, Fraction]],
                 w: Union[VertexPoint, Mapping[EdgeId, Fraction]]) -> bool:
    """
    True iff the vertices u and w span an edge of P(G,b): gr(u) u gr(w) has
    exactly one component of nullity 1 and all others of nullity 0.
    """
    u, w = _as_point(g, u), _as_point(g, w)
    if u.coords == w.coords:
        raise PreconditionError("❌ is_edge_pair needs two distinct vertices")
    for label, point in (('first', u), ('second', w)):
        verdict = is_vertex(g, b, point.coords)
        if not verdict:
            raise PreconditionError(f"❌ The {label} point is not a vertex ({verdict.reason.value})")

    union = g.subgraph(u.support | w.support)
    tags = classify_cycle_structure(union)
    ones = sum(1 for tag in tags if tag in NULLITY_ONE_CLASSES)
    adjacent = ones == 1 and all(tag in NULLITY_ZERO_CLASSES | NULLITY_ONE_CLASSES for tag in tags)
    if config.DEBUG_CHECKS and adjacent != (incidence_nullity(union) == 1):
        raise VerificationError("❌ Cycle classes and incidence nullity disagree on adjacency")
    return adjacent


def polytope_edges(g: MultiGraph, b: Mapping[VertexId, Fraction],
                   vertices: Optional[Sequence[VertexPoint]] = None) -> List[Tuple[int, int]]:
    """Index pairs (i, j), i < j, of adjacent vertices in enumeration order."""
    if vertices is None:
        vertices = enumerate_vertices(g, b)
    pairs = []
    for i, j in combinations(range(len(vertices)), 2):
        adjacent = is_edge_pair(g, b, vertices[i], vertices[j])
        if config.DEBUG_CHECKS:
            union = vertices[i].support | vertices[j].support
            inside = [k for k, u in enumerate(vertices) if u.support <= union]
            if adjacent != (inside == [i, j]):
                raise VerificationError(f"❌ Adjacency of vertices {i} and {j} disagrees with containment")
        if adjacent:
            pairs.append((i, j))
    return pairs
