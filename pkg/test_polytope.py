"""Tests for vertices, dimension, graph and adjacency of P(G,b)."""

import math
import random
from fractions import Fraction
from itertools import combinations

import pytest

import config
from errors import CapExceededError, PreconditionError
from feasibility import check_strictly_positive
from graph_structure import analyze_components
from multigraph import MultiGraph
from oracle import oracle_dimension, oracle_is_vertex, oracle_vertices
from polytope import (VertexReason, dimension, enumerate_vertices, in_polytope, is_edge_pair, is_vertex,
                      polytope_edges, polytope_graph, summarize, vertex_from_graph)

HALF = Fraction(1, 2)


def _coords(points):
    return [u.coords for u in points]


def test_even_cycle_vertices(c4, ones):
    assert _coords(enumerate_vertices(c4, ones(c4))) == [
        {'e1': 1, 'e2': 0, 'e3': 1, 'e4': 0},
        {'e1': 0, 'e2': 1, 'e3': 0, 'e4': 1},
    ]


def test_odd_cycle_single_vertex(k3, ones):
    assert _coords(enumerate_vertices(k3, ones(k3))) == [{'e1': HALF, 'e2': HALF, 'e3': HALF}]


def test_empty_polytope_has_no_vertices(p3, ones):
    assert enumerate_vertices(p3, ones(p3)) == []
    assert dimension(p3, ones(p3)) == -1


def test_twin_pair_square(twin2, ones):
    vertices = enumerate_vertices(twin2, ones(twin2))
    assert [sorted(u.support) for u in vertices] == [
        ['e1', 'e3'], ['e1', 'e4'], ['e2', 'e3'], ['e2', 'e4'],
    ]


def test_vertex_from_graph(pan, p3):
    b = {'v1': 2, 'v2': 1, 'v3': 1, 'v4': 1}
    assert vertex_from_graph(pan, b, pan.edge_ids) == {'e1': HALF, 'e2': HALF, 'e3': HALF, 'e4': 1}
    assert vertex_from_graph(p3, {'v1': 1, 'v2': 2, 'v3': 1}, ['e1', 'e2']) == {'e1': 1, 'e2': 1}


def test_vertex_from_graph_rejects_cyclic_or_nonpositive(c4, p3, ones):
    assert vertex_from_graph(c4, ones(c4), c4.edge_ids) is None
    assert vertex_from_graph(p3, {'v1': 1, 'v2': 1, 'v3': 0}, ['e1', 'e2']) is None


def test_forced_zero_edge_leaves_graph(p3):
    assert polytope_graph(p3, {'v1': 1, 'v2': 1, 'v3': 0}) == {'e1'}


@pytest.mark.parametrize('name, expected', [('k3', 0), ('c4', 1), ('twin2', 2), ('k3d', 1), ('bowtie', 1)])
def test_dimension(request, ones, name, expected):
    g = request.getfixturevalue(name)
    assert dimension(g, ones(g)) == expected


def test_summary(twin2, ones):
    summary = summarize(twin2, ones(twin2))
    assert summary.nonempty
    assert summary.dimension == 2
    assert summary.graph == set(twin2.edge_ids)
    assert summary.bipartite_count == 2


def test_is_vertex_reasons(c4, ones):
    b = ones(c4)
    assert is_vertex(c4, b, {'e1': 1, 'e3': 1}).reason == VertexReason.VERTEX
    half = {e: HALF for e in c4.edge_ids}
    assert not is_vertex(c4, b, half)
    assert is_vertex(c4, b, half).reason == VertexReason.CYCLIC_SUPPORT
    assert is_vertex(c4, b, {'e1': 2, 'e2': -1, 'e3': 0, 'e4': 0}).reason == VertexReason.NEGATIVE_ENTRY
    assert is_vertex(c4, b, {'e1': 1}).reason == VertexReason.DEMAND_MISMATCH
    assert not in_polytope(c4, b, {'e1': 1})


def test_adjacent_pair_on_even_cycle(c4, ones):
    u, w = enumerate_vertices(c4, ones(c4))
    assert is_edge_pair(c4, ones(c4), u, w)


def test_square_diagonal_not_adjacent(twin2, ones):
    b = ones(twin2)
    assert not is_edge_pair(twin2, b, {'e1': 1, 'e3': 1}, {'e2': 1, 'e4': 1})
    assert is_edge_pair(twin2, b, {'e1': 1, 'e3': 1}, {'e1': 1, 'e4': 1})


def test_doubled_triangle_pair_adjacent(k3d, ones):
    first = {'e1': HALF, 'e2': HALF, 'e3': HALF}
    second = {"e1'": HALF, 'e2': HALF, 'e3': HALF}
    assert is_edge_pair(k3d, ones(k3d), first, second)


def test_edge_pair_preconditions(c4, ones):
    b = ones(c4)
    u = {'e1': 1, 'e3': 1}
    with pytest.raises(PreconditionError, match="distinct"):
        is_edge_pair(c4, b, u, u)
    with pytest.raises(PreconditionError, match="not a vertex"):
        is_edge_pair(c4, b, u, {e: HALF for e in c4.edge_ids})


def test_polytope_edges_of_square(twin2, ones):
    assert polytope_edges(twin2, ones(twin2)) == [(0, 1), (0, 2), (1, 3), (2, 3)]


def test_enumeration_caps(monkeypatch, c4, ones):
    with pytest.raises(CapExceededError, match="--max-edges"):
        enumerate_vertices(c4, ones(c4), max_edges=3)
    monkeypatch.setattr(config, 'ENUM_MAX_VERTICES', 3)
    with pytest.raises(CapExceededError, match="BMATCH_ENUM_MAX_VERTICES"):
        enumerate_vertices(c4, ones(c4))


def test_zero_demand_vertex_is_origin():
    g = MultiGraph(['v1', 'v2'], [('e1', 'v1', 'v2')])
    assert _coords(enumerate_vertices(g, {})) == [{'e1': 0}]
    assert dimension(g, {}) == 0


def test_vertices_match_oracle(sampled_instances):
    for g, b in sampled_instances:
        found = _coords(enumerate_vertices(g, b))
        assert found == oracle_vertices(g, b)
        for x in found:
            smaller = [y for y in found if y != x and {e for e, v in y.items() if v} <= {e for e, v in x.items() if v}]
            assert not smaller


def test_dimension_matches_oracle(sampled_instances):
    for g, b in sampled_instances:
        vertices = enumerate_vertices(g, b)
        assert dimension(g, b) == oracle_dimension(_coords(vertices))
        if g.edges and check_strictly_positive(g, b).positive:
            bipartite = analyze_components(g).bipartite_count
            assert dimension(g, b) == len(g.edges) - len(g.vertices) + bipartite


def test_vertex_test_matches_oracle(sampled_instances):
    for g, b in sampled_instances:
        vertices = _coords(enumerate_vertices(g, b))
        for x in vertices:
            assert is_vertex(g, b, x).is_vertex
            assert oracle_is_vertex(g, b, x)
        for x, y in combinations(vertices, 2):
            point = {e: (x[e] + 2 * y[e]) / 3 for e in g.edge_ids}
            assert not is_vertex(g, b, point).is_vertex
            assert not oracle_is_vertex(g, b, point)


def test_adjacency_matches_oracle(sampled_instances):
    from oracle import oracle_face_lattice
    for g, b in sampled_instances:
        if not any(b.values()):
            continue
        vertices = enumerate_vertices(g, b)
        report = oracle_face_lattice(g, b)
        for i, j in combinations(range(len(vertices)), 2):
            assert is_edge_pair(g, b, vertices[i], vertices[j]) == report.adjacency[i][j]


def test_random_convex_combinations_are_not_vertices(small_family):
    rng = random.Random(20240917)
    pairs = []
    for g in small_family:
        for b in ({v: Fraction(1) for v in g.vertices}, {v: Fraction(i + 1) for i, v in enumerate(g.vertices)}):
            vertices = _coords(enumerate_vertices(g, b))
            pairs.extend((g, b, x, y) for x, y in combinations(vertices, 2))
    assert pairs
    per_pair = math.ceil(1000 / len(pairs))

    checked = 0
    for g, b, x, y in pairs:
        for _ in range(per_pair):
            t = Fraction(rng.randint(1, 99), 100)
            point = {e: t * x[e] + (1 - t) * y[e] for e in g.edge_ids}
            assert not is_vertex(g, b, point).is_vertex
            assert not oracle_is_vertex(g, b, point)
            checked += 1
    assert checked >= 1000
