#!/usr/bin/env python3
"""
Finite undirected multigraphs with loops and parallel edges.

Vertex and edge ids are opaque strings. Iteration order is the declared
order and every enumeration downstream sorts by it, which keeps all output
byte-stable. A loop at v appears once in delta(v), so it contributes a
single 1 to the incidence matrix and its weight once to the diagonal of the
generalized adjacency matrix.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

import networkx as nx

from errors import GraphSpecError, NotBipartitionError, UnknownEdgeError, UnknownVertexError
from rational_linalg import ZERO, RatMatrix, to_rational

VertexId = str
EdgeId = str
BVector = Dict[VertexId, Fraction]
DemandVector = Dict[VertexId, Fraction]
EdgeVector = Dict[EdgeId, Fraction]
EdgeSet = FrozenSet[EdgeId]


@dataclass(frozen=True)
class Edge:
    id: EdgeId
    ends: Tuple[VertexId, VertexId]

    @property
    def is_loop(self) -> bool:
        return self.ends[0] == self.ends[1]

    def other(self, v: VertexId) -> VertexId:
        return self.ends[1] if self.ends[0] == v else self.ends[0]

    def joins(self, us, ws) -> bool:
        """True iff one endpoint is in us and the other in ws."""
        u, w = self.ends
        return (u in us and w in ws) or (w in us and u in ws)


class MultiGraph:
    """Immutable multigraph; the vertex set is nonempty, the edge set may be empty."""

    def __init__(self, vertices: Iterable[VertexId], edges: Iterable = ()):
        self.vertices: Tuple[VertexId, ...] = tuple(vertices)
        self.edges: Tuple[Edge, ...] = tuple(
            e if isinstance(e, Edge) else Edge(e[0], (e[1], e[2])) for e in edges
        )
        self._validate()

        self._vertex_pos = {v: i for i, v in enumerate(self.vertices)}
        self._edge_pos = {e.id: i for i, e in enumerate(self.edges)}
        self._edge_by_id = {e.id: e for e in self.edges}
        incident: Dict[VertexId, List[EdgeId]] = {v: [] for v in self.vertices}
        for e in self.edges:
            incident[e.ends[0]].append(e.id)
            if not e.is_loop:
                incident[e.ends[1]].append(e.id)
        self._incident = {v: tuple(ids) for v, ids in incident.items()}

    def _validate(self):
        if not self.vertices:
            raise GraphSpecError(
                "❌ A graph needs at least one vertex.\n\n"
                "Add a \"vertices\" list to the graph file, e.g. [\"v1\"]."
            )
        for v in self.vertices:
            if not isinstance(v, str):
                raise GraphSpecError(f"❌ Vertex ids must be strings, got {v!r}")
        if len(set(self.vertices)) != len(self.vertices):
            dupes = sorted({v for v in self.vertices if self.vertices.count(v) > 1})
            raise GraphSpecError(f"❌ Duplicate vertex ids: {', '.join(dupes)}")

        known = set(self.vertices)
        seen = set()
        for e in self.edges:
            if not isinstance(e.id, str):
                raise GraphSpecError(f"❌ Edge ids must be strings, got {e.id!r}")
            if e.id in seen:
                raise GraphSpecError(f"❌ Duplicate edge id: {e.id}")
            seen.add(e.id)
            for v in e.ends:
                if not isinstance(v, str):
                    raise GraphSpecError(f"❌ Edge {e.id} has a non-string endpoint {v!r}")
                if v not in known:
                    raise GraphSpecError(
                        f"❌ Edge {e.id} has an unknown endpoint {v!r}.\n\n"
                        "Every endpoint must be listed under \"vertices\"."
                    )

    @property
    def edge_ids(self) -> Tuple[EdgeId, ...]:
        return tuple(e.id for e in self.edges)

    def edge(self, edge_id: EdgeId) -> Edge:
        try:
            return self._edge_by_id[edge_id]
        except KeyError:
            raise UnknownEdgeError(edge_id)

    def vertex_index(self, v: VertexId) -> int:
        try:
            return self._vertex_pos[v]
        except KeyError:
            raise UnknownVertexError(v)

    def edge_index(self, edge_id: EdgeId) -> int:
        try:
            return self._edge_pos[edge_id]
        except KeyError:
            raise UnknownEdgeError(edge_id)

    def check_vertices(self, vs: Iterable[VertexId]) -> FrozenSet[VertexId]:
        vs = frozenset(vs)
        for v in vs:
            if v not in self._vertex_pos:
                raise UnknownVertexError(v)
        return vs

    def check_edges(self, edge_ids: Iterable[EdgeId]) -> EdgeSet:
        edge_ids = frozenset(edge_ids)
        for e in edge_ids:
            if e not in self._edge_pos:
                raise UnknownEdgeError(e)
        return edge_ids

    def delta(self, v: VertexId) -> Tuple[EdgeId, ...]:
        """Edges incident to v in canonical order; a loop is listed once."""
        try:
            return self._incident[v]
        except KeyError:
            raise UnknownVertexError(v)

    def ordered_vertices(self, vs: Iterable[VertexId]) -> Tuple[VertexId, ...]:
        return tuple(sorted(self.check_vertices(vs), key=self._vertex_pos.__getitem__))

    def ordered_edges(self, edge_ids: Iterable[EdgeId]) -> Tuple[EdgeId, ...]:
        return tuple(sorted(self.check_edges(edge_ids), key=self._edge_pos.__getitem__))

    def subgraph(self, edge_ids: Iterable[EdgeId]) -> 'MultiGraph':
        """Spanning subgraph: all vertices, only the given edges."""
        keep = self.check_edges(edge_ids)
        return MultiGraph(self.vertices, [e for e in self.edges if e.id in keep])

    def to_networkx(self) -> nx.MultiGraph:
        nxg = nx.MultiGraph()
        nxg.add_nodes_from(self.vertices)
        for e in self.edges:
            nxg.add_edge(e.ends[0], e.ends[1], key=e.id)
        return nxg

    def __eq__(self, other):
        if not isinstance(other, MultiGraph):
            return NotImplemented
        return self.vertices == other.vertices and self.edges == other.edges

    def __hash__(self):
        return hash((self.vertices, self.edges))

    def __repr__(self):
        shown = ', '.join(f"{e.id}=({e.ends[0]},{e.ends[1]})" for e in self.edges)
        return f"MultiGraph(V={list(self.vertices)}, E=[{shown}])"


def make_bvector(g: MultiGraph, entries: Optional[Mapping] = None, allow_negative: bool = False) -> BVector:
    """Total vertex weighting; missing entries default to 0."""
    entries = entries or {}
    for v in entries:
        if v not in g._vertex_pos:
            raise UnknownVertexError(v)
    vector = {v: to_rational(entries.get(v, 0)) for v in g.vertices}
    if not allow_negative:
        negative = [v for v, value in vector.items() if value < 0]
        if negative:
            raise GraphSpecError(
                f"❌ b must be nonnegative; negative at {', '.join(negative)}.\n\n"
                "Only demand vectors for solve-flow may be negative."
            )
    return vector


def make_edge_vector(g: MultiGraph, entries: Optional[Mapping] = None) -> EdgeVector:
    """Total edge weighting; missing entries default to 0."""
    entries = entries or {}
    for e in entries:
        if e not in g._edge_pos:
            raise UnknownEdgeError(e)
    return {e.id: to_rational(entries.get(e.id, 0)) for e in g.edges}


def build_graph(description: Mapping) -> Tuple[MultiGraph, BVector]:
    """
    Build a validated graph and its b from a graph description.

    The description has the JSON shape
        {"vertices": [...], "edges": [{"id": ..., "ends": [u, w]}], "b": {...}}
    where "b" is optional and missing entries are 0.
    """
    if not isinstance(description, Mapping):
        raise GraphSpecError("❌ A graph description must be a JSON object")
    vertices = description.get('vertices')
    if not isinstance(vertices, list):
        raise GraphSpecError("❌ \"vertices\" must be a list of vertex ids")

    raw_edges = description.get('edges', [])
    if not isinstance(raw_edges, list):
        raise GraphSpecError("❌ \"edges\" must be a list of {\"id\": ..., \"ends\": [u, w]} objects")

    edges = []
    for i, item in enumerate(raw_edges):
        if not isinstance(item, Mapping) or 'id' not in item or 'ends' not in item:
            raise GraphSpecError(
                f"❌ Edge #{i + 1} is malformed.\n\n"
                "Each edge looks like {\"id\": \"e1\", \"ends\": [\"v1\", \"v2\"]};\n"
                "a loop repeats its vertex: {\"id\": \"e1\", \"ends\": [\"v1\", \"v1\"]}."
            )
        ends = item['ends']
        if not isinstance(ends, (list, tuple)) or len(ends) != 2:
            raise GraphSpecError(f"❌ Edge {item['id']!r} needs exactly two ends")
        if not all(isinstance(v, str) for v in ends):
            raise GraphSpecError(f"❌ Edge {item['id']!r} has a non-string endpoint: {ends!r}")
        edges.append(Edge(item['id'], (ends[0], ends[1])))

    g = MultiGraph(vertices, edges)
    b_entries = description.get('b', {})
    if not isinstance(b_entries, Mapping):
        raise GraphSpecError("❌ \"b\" must map vertex ids to rationals")
    return g, make_bvector(g, b_entries)


def support(x: Mapping[EdgeId, Fraction]) -> EdgeSet:
    return frozenset(e for e, value in x.items() if value != 0)


def edge_set_between(g: MultiGraph, us: Iterable[VertexId], ws: Iterable[VertexId]) -> EdgeSet:
    """G[U,W]: the edges with one endpoint in U and the other in W."""
    us = g.check_vertices(us)
    ws = g.check_vertices(ws)
    return frozenset(e.id for e in g.edges if e.joins(us, ws))


def is_vertex_cover(g: MultiGraph, cover: Iterable[VertexId]) -> bool:
    rest = set(g.vertices) - g.check_vertices(cover)
    return not edge_set_between(g, rest, rest)


def is_bipartition(g: MultiGraph, us: Iterable[VertexId], ws: Iterable[VertexId]) -> bool:
    us = g.check_vertices(us)
    ws = g.check_vertices(ws)
    if us & ws or (us | ws) != set(g.vertices):
        return False
    return all(e.joins(us, ws) for e in g.edges)


def incidence_sums(g: MultiGraph, x: Mapping[EdgeId, Fraction]) -> Dict[VertexId, Fraction]:
    """Sum of x over delta(v), for every v."""
    return {v: sum((x[e] for e in g.delta(v)), ZERO) for v in g.vertices}


def generalized_adjacency(g: MultiGraph, x: Mapping[EdgeId, Fraction],
                          bipartition: Optional[Tuple[Sequence[VertexId], Sequence[VertexId]]] = None) -> RatMatrix:
    """
    A_G(x): entry (v, w) is the total weight of the edges joining v and w.

    With a bipartition (U, W) the U x W block is returned instead.
    """
    x = make_edge_vector(g, x)
    entries = {}
    for e in g.edges:
        u, w = e.ends
        entries[(u, w)] = entries.get((u, w), ZERO) + x[e.id]
        if not e.is_loop:
            entries[(w, u)] = entries.get((w, u), ZERO) + x[e.id]
    full = RatMatrix(g.vertices, g.vertices, entries)
    if bipartition is None:
        return full

    us, ws = bipartition
    if not is_bipartition(g, us, ws):
        raise NotBipartitionError(
            "❌ The given (U, W) is not a bipartition for this graph.\n\n"
            "U and W must split the vertices, and every edge must join U to W."
        )
    return full.restrict_rows(g.ordered_vertices(us)).restrict_columns(g.ordered_vertices(ws))


def adjacency_row_sums(g: MultiGraph, x: Mapping[EdgeId, Fraction]) -> Dict[VertexId, Fraction]:
    """Row sums of A_G(x); these coincide with the incidence sums over delta(v)."""
    a = generalized_adjacency(g, x)
    return {v: sum(a.row(v).values(), ZERO) for v in g.vertices}
