#!/usr/bin/env python3
"""
Brute-force ground truth for P(G,b), built from plain rational linear algebra.

Nothing here looks at cycles or components. Vertices are the positive basic
solutions of I_G y = b, a point is a vertex iff the incidence columns on its
support are independent, and faces are the support-closed sets of vertices.
audit() runs these next to the structural modules and reports agreement.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, FrozenSet, List, Mapping, Optional, Sequence, Tuple

import config
from errors import CapExceededError, NotInPolytopeError, ZeroDemandError
from face_lattice import enumerate_face_graphs, face_from_graph
from feasibility import check_nonempty, check_strictly_positive
from graph_structure import incidence_matrix
from multigraph import BVector, EdgeId, EdgeSet, EdgeVector, MultiGraph, VertexId, make_bvector, make_edge_vector
from polytope import dimension, enumerate_vertices, is_vertex, polytope_edges
from rational_linalg import ZERO, rank_nullity, solve_affine, vectors_rank

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OracleReport:
    vertices: Tuple[EdgeVector, ...]
    dimension: int
    face_supports: Tuple[EdgeSet, ...]
    face_vertex_sets: Tuple[FrozenSet[int], ...]
    adjacency: Tuple[Tuple[bool, ...], ...]


@dataclass(frozen=True)
class AuditCheck:
    name: str
    passed: bool
    detail: str = ''


def _support(x: Mapping[EdgeId, Fraction]) -> EdgeSet:
    return frozenset(e for e, value in x.items() if value != 0)


def _point_key(g: MultiGraph, x: Mapping[EdgeId, Fraction]) -> Tuple[Fraction, ...]:
    return tuple(x[e] for e in g.edge_ids)


def _check_edge_cap(g: MultiGraph, max_edges: Optional[int]):
    limit = config.resolve_cap(max_edges, config.MAX_EDGES)
    if len(g.edges) > limit:
        raise CapExceededError('edge', limit, len(g.edges), '--max-edges', 'BMATCH_MAX_EDGES')


def oracle_vertices(g: MultiGraph, b: Mapping[VertexId, Fraction],
                    max_edges: Optional[int] = None) -> List[EdgeVector]:
    """Every column subset S of I_G with independent columns, solved for y > 0 on S."""
    b = make_bvector(g, b)
    _check_edge_cap(g, max_edges)
    incidence = incidence_matrix(g)

    found: Dict[Tuple[Fraction, ...], EdgeVector] = {}
    for size in range(min(len(g.vertices), len(g.edges)) + 1):
        for cols in combinations(g.edge_ids, size):
            restricted = incidence.restrict_columns(cols)
            if rank_nullity(restricted)[1] != 0:
                continue
            result = solve_affine(restricted, b)
            if not result.feasible or any(value <= 0 for value in result.particular.values()):
                continue
            x = {e: ZERO for e in g.edge_ids}
            x.update(result.particular)
            found[_point_key(g, x)] = x

    def order(x):
        return sorted(g.edge_index(e) for e in _support(x))

    vertices = sorted(found.values(), key=order)
    logger.debug("oracle_vertices: %d basic solutions kept", len(vertices))
    return vertices


def oracle_is_vertex(g: MultiGraph, b: Mapping[VertexId, Fraction], u: Mapping[EdgeId, Fraction]) -> bool:
    """Midpoint-freeness: no nonzero direction supported inside supp(u) keeps I_G u fixed."""
    b = make_bvector(g, b)
    u = make_edge_vector(g, u)
    negative = [e for e, value in u.items() if value < 0]
    if negative:
        raise NotInPolytopeError(f"negative on {', '.join(negative)}")
    incidence = incidence_matrix(g)
    if incidence.apply(u) != b:
        raise NotInPolytopeError("incidence sums differ from b")
    cols = g.ordered_edges(_support(u))
    return rank_nullity(incidence.restrict_columns(cols))[1] == 0


def oracle_dimension(vertices: Sequence[Mapping[EdgeId, Fraction]]) -> int:
    """Affine rank of the vertex set; -1 when there are no vertices."""
    if not vertices:
        return -1
    index = list(vertices[0])
    base = vertices[0]
    differences = [{e: v[e] - base[e] for e in index} for v in vertices[1:]]
    return vectors_rank(differences, index)


def _closure(supports: Sequence[EdgeSet], ids) -> FrozenSet[int]:
    union = frozenset().union(*(supports[i] for i in ids))
    return frozenset(k for k, s in enumerate(supports) if s <= union)


def oracle_face_lattice(g: MultiGraph, b: Mapping[VertexId, Fraction],
                        max_edges: Optional[int] = None, max_polytope_vertices: Optional[int] = None) -> OracleReport:
    """
    Faces as the closures of all vertex subsets: S goes to every vertex whose
    support lies in the union of the supports in S. The empty face is included.
    """
    b = make_bvector(g, b)
    if not any(b.values()):
        raise ZeroDemandError('oracle_face_lattice')
    vertices = oracle_vertices(g, b, max_edges=max_edges)
    limit = config.resolve_cap(max_polytope_vertices, config.ORACLE_MAX_POLYTOPE_VERTICES)
    if len(vertices) > limit:
        raise CapExceededError('polytope vertex', limit, len(vertices), '--max-vertices',
                               'BMATCH_ORACLE_MAX_POLYTOPE_VERTICES')

    supports = [_support(u) for u in vertices]
    n = len(vertices)
    closed = set()
    for mask in range(1 << n):
        closed.add(_closure(supports, [i for i in range(n) if mask >> i & 1]))
    faces = sorted(closed, key=lambda ids: (len(ids), sorted(ids)))

    adjacency = tuple(
        tuple(i != j and _closure(supports, (i, j)) == {i, j} for j in range(n))
        for i in range(n)
    )
    face_supports = tuple(frozenset().union(*(supports[i] for i in ids)) for ids in faces)
    logger.debug("oracle_face_lattice: %d vertices, %d faces", n, len(faces))
    return OracleReport(
        vertices=tuple(vertices),
        dimension=oracle_dimension(vertices),
        face_supports=face_supports,
        face_vertex_sets=tuple(faces),
        adjacency=adjacency,
    )


def _check(name: str, passed: bool, detail: str = '') -> AuditCheck:
    if not passed:
        logger.warning("audit check %s failed: %s", name, detail)
    return AuditCheck(name, passed, detail)


def audit(g: MultiGraph, b: Mapping[VertexId, Fraction],
          max_vertices: Optional[int] = None, max_edges: Optional[int] = None) -> List[AuditCheck]:
    """Run the structural decision procedures next to the oracle and compare."""
    b = make_bvector(g, b)
    truth = oracle_vertices(g, b, max_edges=max_edges)
    structural = enumerate_vertices(g, b, max_vertices=max_vertices, max_edges=max_edges)
    truth_keys = [_point_key(g, x) for x in truth]
    position = {key: i for i, key in enumerate(truth_keys)}
    checks = []

    found_keys = [_point_key(g, u.coords) for u in structural]
    checks.append(_check(
        'vertices', sorted(found_keys) == sorted(truth_keys),
        f"{len(structural)} structural, {len(truth)} oracle",
    ))

    vertex_test = all(is_vertex(g, b, x).is_vertex and oracle_is_vertex(g, b, x) for x in truth)
    for x, y in combinations(truth, 2):
        midpoint = {e: (x[e] + y[e]) / 2 for e in g.edge_ids}
        vertex_test = vertex_test and not is_vertex(g, b, midpoint) and not oracle_is_vertex(g, b, midpoint)
    checks.append(_check('vertex-test', vertex_test, 'vertices and pairwise midpoints'))

    expected = oracle_dimension(truth)
    got = dimension(g, b, max_vertices=max_vertices, max_edges=max_edges)
    checks.append(_check('dimension', got == expected, f"structural {got}, oracle {expected}"))

    nonempty = check_nonempty(g, b, max_vertices=max_vertices).feasible
    checks.append(_check('nonempty', nonempty == bool(truth), f"structural {nonempty}, oracle {bool(truth)}"))

    if g.edges:
        positive = check_strictly_positive(g, b, max_vertices=max_vertices, max_edges=max_edges).positive
        covered = frozenset().union(*(_support(x) for x in truth)) == set(g.edge_ids)
        checks.append(_check('strictly-positive', positive == covered, f"structural {positive}, oracle {covered}"))

    if any(b.values()):
        report = oracle_face_lattice(g, b, max_edges=max_edges)
        to_oracle = [position.get(key) for key in found_keys]

        pairs = {frozenset((to_oracle[i], to_oracle[j])) for i, j in polytope_edges(g, b, vertices=structural)}
        oracle_pairs = {
            frozenset((i, j)) for i, j in combinations(range(len(truth)), 2) if report.adjacency[i][j]
        }
        checks.append(_check('edges', pairs == oracle_pairs, f"{len(pairs)} structural, {len(oracle_pairs)} oracle"))

        graphs = enumerate_face_graphs(g, b, vertices=structural, max_vertices=max_vertices)
        checks.append(_check(
            'face-count', len(graphs) == len(report.face_vertex_sets),
            f"{len(graphs)} structural, {len(report.face_vertex_sets)} oracle",
        ))

        vertex_sets = {
            frozenset(to_oracle[i] for i in face_from_graph(g, b, h, vertices=structural,
                                                            max_vertices=max_vertices).vertex_ids)
            for h in graphs
        }
        checks.append(_check(
            'lattice-order', vertex_sets == set(report.face_vertex_sets),
            'face vertex sets, compared as families ordered by inclusion',
        ))

    return checks
