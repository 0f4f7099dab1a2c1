#!/usr/bin/env python3
"""
The lattice of graphs of P(G,b) and its export.

Faces are represented by their graphs: the spanning subgraph carrying the
union of the supports of the face's vertices. These graphs are exactly the
unions of vertex supports, and ordered by inclusion they form a lattice
isomorphic to the face lattice. A subgraph H is such a graph iff P(H,b) has
a strictly positive point, which is tested with the tri-partition condition
(or, for bipartite H, with vertex covers).
"""

import logging
from dataclasses import dataclass, field
from itertools import chain, combinations
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from graphviz import Digraph

import config
from errors import HostMismatchError, NotAFaceGraphError, VerificationError, ZeroDemandError
from feasibility import first_blocking_partition, vertex_cover_violation
from graph_structure import analyze_components
from multigraph import BVector, EdgeId, EdgeSet, MultiGraph, make_bvector
from polytope import VertexPoint, enumerate_vertices, support_key

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FaceGraph:
    host: Optional[MultiGraph]
    edges: EdgeSet

    def ordered_edges(self) -> Tuple[EdgeId, ...]:
        if self.host is None:
            return tuple(sorted(self.edges))
        return self.host.ordered_edges(self.edges)


@dataclass(frozen=True)
class FaceDescriptor:
    graph: FaceGraph
    dimension: int
    vertex_ids: Tuple[int, ...]


@dataclass(frozen=True)
class FaceLattice:
    host: MultiGraph
    vertices: Tuple[VertexPoint, ...] = field(repr=False)
    elements: Tuple[FaceDescriptor, ...]
    covers: Tuple[Tuple[int, int], ...]

    @property
    def bottom(self) -> FaceDescriptor:
        return self.elements[0]

    @property
    def top(self) -> FaceDescriptor:
        return self.elements[-1]

    def index_of(self, edges: Iterable[EdgeId]) -> int:
        edges = frozenset(edges)
        for i, face in enumerate(self.elements):
            if face.graph.edges == edges:
                return i
        raise NotAFaceGraphError(self.host.ordered_edges(edges))


def _require_nonzero(b: BVector, operation: str):
    if not any(b.values()):
        raise ZeroDemandError(operation)


def _edges_of(g: MultiGraph, h: Union[FaceGraph, Iterable[EdgeId]]) -> EdgeSet:
    if isinstance(h, FaceGraph):
        if h.host is not None and h.host != g:
            raise HostMismatchError()
        return g.check_edges(h.edges)
    return g.check_edges(h)


def is_face_graph(g: MultiGraph, b: Mapping, h: Union[FaceGraph, Iterable[EdgeId]],
                  max_vertices: Optional[int] = None) -> bool:
    """
    True iff H has no edges, or every tri-partition with H[V2 u V3, V3] = {}
    has b(V1) >= b(V3), with equality iff H[V1, V1 u V2] = {}.
    Bipartite H is decided with vertex covers of H instead.
    """
    b = make_bvector(g, b)
    _require_nonzero(b, 'is_face_graph')
    edges = _edges_of(g, h)
    if not edges:
        return True

    sub = g.subgraph(edges)
    report = analyze_components(sub)
    if report.bipartite_count == len(report.components):
        verdict = vertex_cover_violation(sub, b, strict=True, max_vertices=max_vertices) is None
        if config.DEBUG_CHECKS:
            general = first_blocking_partition(sub, b, max_vertices=max_vertices) is None
            if general != verdict:
                raise VerificationError("❌ Vertex-cover and tri-partition face tests disagree")
        return verdict
    return first_blocking_partition(sub, b, max_vertices=max_vertices) is None


def _vertices_or_enumerate(g, b, vertices, max_vertices, max_edges) -> Sequence[VertexPoint]:
    if vertices is not None:
        return vertices
    return enumerate_vertices(g, b, max_vertices=max_vertices, max_edges=max_edges)


def enumerate_face_graphs(g: MultiGraph, b: Mapping, vertices: Optional[Sequence[VertexPoint]] = None,
                          max_vertices: Optional[int] = None, max_edges: Optional[int] = None) -> List[FaceGraph]:
    """All distinct unions of vertex supports, the empty union included, smallest first."""
    b = make_bvector(g, b)
    _require_nonzero(b, 'enumerate_face_graphs')
    vertices = _vertices_or_enumerate(g, b, vertices, max_vertices, max_edges)

    unions = {frozenset()}
    for u in vertices:
        unions |= {s | u.support for s in unions}
    ordered = sorted(unions, key=lambda s: (len(s), support_key(g, s)))
    logger.debug("enumerate_face_graphs: %d vertices, %d face graphs", len(vertices), len(ordered))

    if config.DEBUG_CHECKS:
        for s in ordered:
            if not is_face_graph(g, b, s, max_vertices=max_vertices):
                raise VerificationError(f"❌ Union of vertex supports fails the face test: {sorted(s)}")
        if len(g.edges) <= config.FACE_CHECK_MAX_EDGES:
            every = chain.from_iterable(combinations(g.edge_ids, k) for k in range(len(g.edges) + 1))
            missed = [s for s in every if frozenset(s) not in unions and is_face_graph(g, b, s, max_vertices)]
            if missed:
                raise VerificationError(f"❌ Face test accepts a subgraph that is no union of supports: {missed[0]}")

    return [FaceGraph(g, s) for s in ordered]


def _describe(g: MultiGraph, edges: EdgeSet, vertices: Sequence[VertexPoint]) -> FaceDescriptor:
    vertex_ids = tuple(i for i, u in enumerate(vertices) if u.support <= edges)
    if not vertex_ids:
        return FaceDescriptor(FaceGraph(g, edges), -1, ())
    count = analyze_components(g.subgraph(edges)).bipartite_count
    return FaceDescriptor(FaceGraph(g, edges), len(edges) - len(g.vertices) + count, vertex_ids)


def face_from_graph(g: MultiGraph, b: Mapping, h: Union[FaceGraph, Iterable[EdgeId]],
                    vertices: Optional[Sequence[VertexPoint]] = None,
                    max_vertices: Optional[int] = None, max_edges: Optional[int] = None) -> FaceDescriptor:
    """The face whose graph is H: its vertices (supports inside H) and dimension."""
    b = make_bvector(g, b)
    edges = _edges_of(g, h)
    if not is_face_graph(g, b, edges, max_vertices=max_vertices):
        raise NotAFaceGraphError(g.ordered_edges(edges))
    vertices = _vertices_or_enumerate(g, b, vertices, max_vertices, max_edges)
    return _describe(g, edges, vertices)


def lattice_meet(g: MultiGraph, b: Mapping, hs: Sequence[Union[FaceGraph, Iterable[EdgeId]]],
                 vertices: Optional[Sequence[VertexPoint]] = None,
                 max_vertices: Optional[int] = None, max_edges: Optional[int] = None) -> FaceGraph:
    """Union of the vertex supports lying inside every member; [] gives gr(P(G,b))."""
    b = make_bvector(g, b)
    _require_nonzero(b, 'lattice_meet')
    members = [_edges_of(g, h) for h in hs]
    for edges in members:
        if not is_face_graph(g, b, edges, max_vertices=max_vertices):
            raise NotAFaceGraphError(g.ordered_edges(edges))
    common = frozenset(g.edge_ids).intersection(*members)
    vertices = _vertices_or_enumerate(g, b, vertices, max_vertices, max_edges)
    return FaceGraph(g, frozenset().union(*(u.support for u in vertices if u.support <= common)))


def lattice_join(hs: Sequence[FaceGraph], host: Optional[MultiGraph] = None) -> FaceGraph:
    """Edgewise union; the empty family gives the bottom (no edges)."""
    hosts = {h.host for h in hs if h.host is not None}
    if host is not None:
        hosts.add(host)
    if len(hosts) > 1:
        raise HostMismatchError()
    common_host = next(iter(hosts), None)
    return FaceGraph(common_host, frozenset().union(*(h.edges for h in hs)))


def is_face_vertex_set(vertices: Sequence[VertexPoint], ids: Iterable[int]) -> bool:
    """ids is a face's vertex set iff it equals {i : supp(u_i) inside the union of its supports}."""
    ids = set(ids)
    union = frozenset().union(*(vertices[i].support for i in ids))
    return ids == {i for i, u in enumerate(vertices) if u.support <= union}


def cover_pairs(sets: Sequence[frozenset]) -> List[Tuple[int, int]]:
    """(i, j) with sets[i] < sets[j] and nothing strictly in between."""
    covers = []
    for i, low in enumerate(sets):
        for j, high in enumerate(sets):
            if low < high and not any(low < mid < high for mid in sets):
                covers.append((i, j))
    return covers


def build_face_lattice(g: MultiGraph, b: Mapping,
                       max_vertices: Optional[int] = None, max_edges: Optional[int] = None) -> FaceLattice:
    b = make_bvector(g, b)
    _require_nonzero(b, 'build_face_lattice')
    vertices = tuple(enumerate_vertices(g, b, max_vertices=max_vertices, max_edges=max_edges))
    graphs = enumerate_face_graphs(g, b, vertices=vertices, max_vertices=max_vertices)
    elements = tuple(_describe(g, h.edges, vertices) for h in graphs)
    covers = cover_pairs([face.graph.edges for face in elements])
    return FaceLattice(g, vertices, elements, tuple(covers))


def lattice_document(lattice: FaceLattice) -> Dict:
    """JSON shape: {faces: [{edges, dim, vertex_ids}], covers: [[i, j], ...]}."""
    return {
        'faces': [
            {
                'edges': list(face.graph.ordered_edges()),
                'dim': face.dimension,
                'vertex_ids': list(face.vertex_ids),
            }
            for face in lattice.elements
        ],
        'covers': [list(pair) for pair in lattice.covers],
    }


def trivial_lattice_document() -> Dict:
    """b = 0: P(G,0) = {0}, so the lattice is the chain {} < {0} and both graphs are empty."""
    return {
        'faces': [
            {'edges': [], 'dim': -1, 'vertex_ids': []},
            {'edges': [], 'dim': 0, 'vertex_ids': [0]},
        ],
        'covers': [[0, 1]],
    }


def document_dot(document: Mapping) -> str:
    """Hasse diagram of a lattice document as DOT source, bottom to top."""
    dot = Digraph(comment='Face lattice', graph_attr={'rankdir': 'BT'}, node_attr={'shape': 'box'})
    for i, face in enumerate(document['faces']):
        edges = ','.join(face['edges']) or '-'
        dot.node(f"F{i}", f"dim {face['dim']}\\n{{{edges}}}")
    for i, j in document['covers']:
        dot.edge(f"F{i}", f"F{j}")
    return dot.source


def lattice_dot(lattice: FaceLattice) -> str:
    return document_dot(lattice_document(lattice))
