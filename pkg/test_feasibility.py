"""Tests for nonemptiness and strict positivity with their certificates."""

from fractions import Fraction

import pytest

import config
import feasibility
from errors import CapExceededError, EmptyEdgeSetError
from feasibility import (Blocking, BlockingKind, InfeasiblePartition, bipartite_double, check_nonempty,
                         check_strictly_positive, find_point, first_blocking_partition, is_valid_partition,
                         reduce_multi_edges, vertex_cover_violation)
from graph_structure import analyze_components
from multigraph import MultiGraph, edge_set_between, incidence_sums
from oracle import oracle_vertices

HALF = Fraction(1, 2)


def _sum(b, vs):
    return sum((b[v] for v in vs), Fraction(0))


def test_path_feasible(p3):
    result = check_nonempty(p3, {'v1': 1, 'v2': 2, 'v3': 1})
    assert result.feasible
    assert result.point == {'e1': 1, 'e2': 1}


def test_path_infeasible_partition(p3):
    result = check_nonempty(p3, {'v1': 1, 'v2': 1, 'v3': 1})
    assert result == InfeasiblePartition(('v2',), (), ('v1', 'v3'))


def test_find_point_builds_certificate(p3):
    b = {'v1': 1, 'v2': 1, 'v3': 1}
    result = find_point(p3, b)
    assert not result.feasible
    assert is_valid_partition(p3, result.v1, result.v2, result.v3)
    assert _sum(b, result.v1) < _sum(b, result.v3)


def test_find_point_odd_cycle(k3):
    result = find_point(k3, {v: 1 for v in k3.vertices})
    assert result.feasible
    assert incidence_sums(k3, result.point) == {v: 1 for v in k3.vertices}


def test_odd_cycle_unbalanced_demand(k3):
    b = {'v1': 3, 'v2': 1, 'v3': 1}
    result = check_nonempty(k3, b)
    assert not result.feasible
    assert result.v3 == ('v1',)
    assert _sum(b, result.v1) < _sum(b, result.v3)


def test_strict_positivity_forced_zero_edge(p3):
    result = check_strictly_positive(p3, {'v1': 1, 'v2': 1, 'v3': 0})
    assert result == Blocking(('v3',), ('v1', 'v2'), (), BlockingKind.EQUALITY_FAIL)
    assert edge_set_between(p3, result.v1, set(result.v1) | set(result.v2)) == {'e2'}


def test_strict_positivity_witness(k3, loop1, p3):
    result = check_strictly_positive(k3, {v: 1 for v in k3.vertices})
    assert result.positive
    assert result.point == {'e1': HALF, 'e2': HALF, 'e3': HALF}
    assert check_strictly_positive(loop1, {'v1': 2}).point == {'e1': 2}
    assert check_strictly_positive(p3, {'v1': 1, 'v2': 2, 'v3': 1}).positive


def test_strict_positivity_even_cycle_mean(c4):
    result = check_strictly_positive(c4, {v: 1 for v in c4.vertices})
    assert result.positive
    assert set(result.point.values()) == {HALF}


def test_strict_positivity_needs_an_edge():
    with pytest.raises(EmptyEdgeSetError):
        check_strictly_positive(MultiGraph(['v1'], []), {'v1': 0})


def test_cover_condition(k3, p3):
    assert vertex_cover_violation(k3, {v: 1 for v in k3.vertices}) is None
    violation = vertex_cover_violation(p3, {'v1': 1, 'v2': 1, 'v3': 1})
    assert violation.cover == ('v2',)
    assert violation.rest == ('v1', 'v3')
    assert violation.kind == BlockingKind.STRICT_FAIL


def test_strict_cover_condition(p3, c4):
    assert vertex_cover_violation(p3, {'v1': 1, 'v2': 2, 'v3': 1}, strict=True) is None
    assert vertex_cover_violation(c4, {v: 1 for v in c4.vertices}, strict=True) is None
    violation = vertex_cover_violation(p3, {'v1': 1, 'v2': 1, 'v3': 0}, strict=True)
    assert violation is not None


def test_vertex_cap(monkeypatch, p3):
    monkeypatch.setattr(config, 'MAX_VERTICES', 2)
    with pytest.raises(CapExceededError, match="BMATCH_MAX_VERTICES"):
        check_nonempty(p3, {'v1': 1, 'v2': 2, 'v3': 1})
    assert check_nonempty(p3, {'v1': 1, 'v2': 2, 'v3': 1}, max_vertices=3).feasible


def test_reduce_multi_edges(twin, k3d):
    reduced, mapping = reduce_multi_edges(twin)
    assert reduced.edge_ids == ('e1',)
    assert mapping == {'e1': 'e1', 'e2': 'e1'}
    reduced, mapping = reduce_multi_edges(k3d)
    assert reduced.edge_ids == ('e1', 'e2', 'e3')
    assert mapping["e1'"] == 'e1'


def test_reduction_keeps_decisions(small_family):
    for g in small_family[::7]:
        reduced, _ = reduce_multi_edges(g)
        for b in ({v: 1 for v in g.vertices}, {v: (i % 3) for i, v in enumerate(g.vertices)}):
            assert check_nonempty(g, b).feasible == check_nonempty(reduced, b).feasible
            if g.edges:
                assert (first_blocking_partition(g, b) is None) == (first_blocking_partition(reduced, b) is None)


def test_double_of_loop(loop1):
    double = bipartite_double(loop1, {'v1': 2})
    d = double.graph
    assert len(d.vertices) == 2 and len(d.edges) == 2
    assert all(set(e.ends) == {'v1|1', 'v1|2'} for e in d.edges)
    assert double.b == {'v1|1': 2, 'v1|2': 2}
    assert double.multiplicity('e1') == 1


def test_double_of_path(p3):
    double = bipartite_double(p3, {'v1': 1, 'v2': 2, 'v3': 1})
    assert len(double.graph.vertices) == 6
    assert len(double.graph.edges) == 4
    assert analyze_components(double.graph).bipartite_count == len(analyze_components(double.graph).components)


def test_double_lift_and_project(pan):
    double = bipartite_double(pan, {'v1': 2, 'v2': 1, 'v3': 1, 'v4': 1})
    x = {'e1': HALF, 'e2': HALF, 'e3': HALF, 'e4': Fraction(1)}
    lifted = double.lift(x)
    assert incidence_sums(double.graph, lifted) == double.b
    assert double.project(lifted) == x


def test_certificates_on_sampled_family(sampled_instances):
    for g, b in sampled_instances:
        result = check_nonempty(g, b)
        assert result.feasible == bool(oracle_vertices(g, b))
        if result.feasible:
            assert incidence_sums(g, result.point) == b
            assert all(value >= 0 for value in result.point.values())
        else:
            assert is_valid_partition(g, result.v1, result.v2, result.v3)
            assert _sum(b, result.v1) < _sum(b, result.v3)


def test_positivity_on_sampled_family(sampled_instances):
    for g, b in sampled_instances:
        if not g.edges:
            continue
        covered = frozenset().union(*(frozenset(e for e, v in x.items() if v) for x in oracle_vertices(g, b)))
        result = check_strictly_positive(g, b)
        assert result.positive == (covered == set(g.edge_ids))
        if result.positive:
            assert all(value > 0 for value in result.point.values())
            assert incidence_sums(g, result.point) == b


def test_cover_condition_is_necessary(sampled_instances):
    for g, b in sampled_instances:
        if check_nonempty(g, b).feasible:
            assert vertex_cover_violation(g, b) is None


def _demands(g):
    yield {v: Fraction(1) for v in g.vertices}
    yield {v: Fraction(i % 3) for i, v in enumerate(g.vertices)}
    yield {v: (Fraction(2) if i == 0 else HALF) for i, v in enumerate(g.vertices)}


def test_doubling_keeps_both_verdicts(tiny_family):
    for g in tiny_family:
        for b in _demands(g):
            double = bipartite_double(g, b)
            assert check_nonempty(g, b).feasible == check_nonempty(double.graph, double.b).feasible
            if g.edges:
                assert (check_strictly_positive(g, b).positive
                        == check_strictly_positive(double.graph, double.b).positive)


def test_find_point_certificates_on_family(small_family):
    infeasible = 0
    for g in small_family:
        for b in _demands(g):
            result = find_point(g, b)
            if result.feasible:
                assert incidence_sums(g, result.point) == b
                continue
            infeasible += 1
            assert is_valid_partition(g, result.v1, result.v2, result.v3)
            assert _sum(b, result.v1) < _sum(b, result.v3)
    assert infeasible > 100


def test_positivity_fails_on_enumeration_cap_before_sweep(monkeypatch, k3):
    monkeypatch.setattr(config, 'ENUM_MAX_VERTICES', 2)

    def no_sweep(*args, **kwargs):
        raise AssertionError("partition sweep ran")

    monkeypatch.setattr(feasibility, 'first_blocking_partition', no_sweep)
    with pytest.raises(CapExceededError, match="BMATCH_ENUM_MAX_VERTICES"):
        check_strictly_positive(k3, {v: 1 for v in k3.vertices})
