"""Tests for reading and writing graph, point and demand files."""

import json
from fractions import Fraction

import pytest

from errors import GraphSpecError
from graph_io import graph_document, load_demand, load_edge_vector, load_graph_file
from multigraph import build_graph


def test_sample_round_trip(sample_path):
    for name in ['loop1', 'p3', 'k3', 'c4', 'twin', 'twin2', 'pan', 'k3d', 'bowtie']:
        g, b = load_graph_file(sample_path(name))
        document = graph_document(g, b)
        assert build_graph(document) == (g, b)
        with open(sample_path(name), encoding='utf-8') as f:
            assert json.load(f) == document


def test_missing_file():
    with pytest.raises(FileNotFoundError, match="Graph file not found"):
        load_graph_file('does/not/exist.json')


def test_invalid_json(tmp_path):
    path = tmp_path / 'broken.json'
    path.write_text('{"vertices": [')
    with pytest.raises(GraphSpecError, match="not valid JSON"):
        load_graph_file(str(path))


def test_point_file_wrapped_or_bare(tmp_path, c4):
    wrapped = tmp_path / 'wrapped.json'
    wrapped.write_text(json.dumps({'point': {'e1': '1/2'}}))
    bare = tmp_path / 'bare.json'
    bare.write_text(json.dumps({'e1': '1/2'}))
    expected = {'e1': Fraction(1, 2), 'e2': 0, 'e3': 0, 'e4': 0}
    assert load_edge_vector(str(wrapped), c4) == expected
    assert load_edge_vector(str(bare), c4) == expected


def test_point_file_must_be_an_object(tmp_path, c4):
    path = tmp_path / 'list.json'
    path.write_text(json.dumps(['e1']))
    with pytest.raises(GraphSpecError):
        load_edge_vector(str(path), c4)


def test_demand_may_be_negative(tmp_path, p3):
    path = tmp_path / 'demand.json'
    path.write_text(json.dumps({'demand': {'v1': '-3/2'}}))
    assert load_demand(str(path), p3) == {'v1': Fraction(-3, 2), 'v2': 0, 'v3': 0}
