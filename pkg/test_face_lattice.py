"""Tests for face graphs, lattice operations and the exported lattice."""

import pytest

from errors import HostMismatchError, NotAFaceGraphError, ZeroDemandError
from face_lattice import (FaceGraph, build_face_lattice, cover_pairs, enumerate_face_graphs, face_from_graph,
                          is_face_graph, is_face_vertex_set, lattice_document, lattice_dot, lattice_join,
                          lattice_meet, trivial_lattice_document)
from feasibility import vertex_cover_violation
from graph_structure import analyze_components
from oracle import oracle_face_lattice
from polytope import enumerate_vertices


def _edges(graphs):
    return [sorted(h.edges) for h in graphs]


def test_even_cycle_face_graphs(c4, ones):
    assert _edges(enumerate_face_graphs(c4, ones(c4))) == [[], ['e1', 'e3'], ['e2', 'e4'], ['e1', 'e2', 'e3', 'e4']]


@pytest.mark.parametrize('name, count', [('c4', 4), ('twin2', 10), ('k3', 2), ('k3d', 4)])
def test_face_counts(request, ones, name, count):
    g = request.getfixturevalue(name)
    assert len(enumerate_face_graphs(g, ones(g))) == count


def test_face_test_on_forced_zero_edge(p3):
    b = {'v1': 1, 'v2': 1, 'v3': 0}
    assert is_face_graph(p3, b, [])
    assert is_face_graph(p3, b, ['e1'])
    assert not is_face_graph(p3, b, ['e1', 'e2'])
    assert not is_face_graph(p3, b, ['e2'])


def test_face_from_graph(twin2, ones):
    face = face_from_graph(twin2, ones(twin2), ['e1', 'e3', 'e4'])
    assert face.vertex_ids == (0, 1)
    assert face.dimension == 1
    bottom = face_from_graph(twin2, ones(twin2), [])
    assert bottom.vertex_ids == ()
    assert bottom.dimension == -1


def test_face_from_graph_rejects_non_face(twin2, ones):
    with pytest.raises(NotAFaceGraphError):
        face_from_graph(twin2, ones(twin2), ['e1'])


def test_zero_demand_rejected(c4):
    with pytest.raises(ZeroDemandError):
        enumerate_face_graphs(c4, {})
    with pytest.raises(ZeroDemandError):
        is_face_graph(c4, {}, ['e1'])


def test_meet(twin2, ones):
    b = ones(twin2)
    meet = lattice_meet(twin2, b, [['e1', 'e3', 'e4'], ['e1', 'e2', 'e3']])
    assert meet.edges == {'e1', 'e3'}
    assert lattice_meet(twin2, b, []).edges == set(twin2.edge_ids)
    assert lattice_meet(twin2, b, [['e1', 'e3'], ['e2', 'e4']]).edges == frozenset()


def test_join_of_adjacent_vertex_graphs(twin2):
    joined = lattice_join([FaceGraph(twin2, frozenset({'e1', 'e3'})), FaceGraph(twin2, frozenset({'e1', 'e4'}))])
    assert joined.edges == {'e1', 'e3', 'e4'}
    assert joined.host == twin2
    assert lattice_join([]).edges == frozenset()


def test_join_refuses_mixed_hosts(twin2, c4):
    with pytest.raises(HostMismatchError):
        lattice_join([FaceGraph(twin2, frozenset({'e1'})), FaceGraph(c4, frozenset({'e1'}))])


def test_face_vertex_sets(twin2, ones):
    vertices = enumerate_vertices(twin2, ones(twin2))
    assert is_face_vertex_set(vertices, {0, 1})
    assert is_face_vertex_set(vertices, set())
    assert not is_face_vertex_set(vertices, {0, 3})


def test_lattice_of_even_cycle(c4, ones):
    lattice = build_face_lattice(c4, ones(c4))
    assert len(lattice.elements) == 4
    assert lattice.covers == ((0, 1), (0, 2), (1, 3), (2, 3))
    assert lattice.bottom.dimension == -1
    assert lattice.top.dimension == 1
    assert lattice.index_of(['e2', 'e4']) == 2


def test_lattice_document_and_dot(c4, ones):
    lattice = build_face_lattice(c4, ones(c4))
    document = lattice_document(lattice)
    assert document['faces'][1] == {'edges': ['e1', 'e3'], 'dim': 0, 'vertex_ids': [0]}
    assert document['covers'] == [[0, 1], [0, 2], [1, 3], [2, 3]]
    dot = lattice_dot(lattice)
    assert 'digraph' in dot
    assert 'F0 -> F1' in dot
    assert 'dim 1' in dot


def test_trivial_lattice():
    document = trivial_lattice_document()
    assert len(document['faces']) == 2
    assert document['covers'] == [[0, 1]]


def test_cover_pairs():
    sets = [frozenset(), frozenset({1}), frozenset({1, 2}), frozenset({3})]
    assert cover_pairs(sets) == [(0, 1), (0, 3), (1, 2)]


def test_lattice_matches_oracle(sampled_instances):
    for g, b in sampled_instances:
        if not any(b.values()):
            continue
        vertices = enumerate_vertices(g, b)
        graphs = enumerate_face_graphs(g, b, vertices=vertices)
        report = oracle_face_lattice(g, b)
        assert len(graphs) == len(report.face_vertex_sets)
        vertex_sets = {frozenset(face_from_graph(g, b, h, vertices=vertices).vertex_ids) for h in graphs}
        assert vertex_sets == set(report.face_vertex_sets)
        assert {h.edges for h in graphs} == set(report.face_supports)
        for ids in report.face_vertex_sets:
            assert is_face_vertex_set(vertices, ids)


def test_bipartite_face_test_uses_covers(sampled_instances):
    for g, b in sampled_instances:
        if not any(b.values()) or not g.edges:
            continue
        report = analyze_components(g)
        if report.bipartite_count != len(report.components):
            continue
        assert is_face_graph(g, b, g.edge_ids) == (vertex_cover_violation(g, b, strict=True) is None)
