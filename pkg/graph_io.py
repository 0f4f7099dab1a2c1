#!/usr/bin/env python3
"""
JSON files in and out.

Graph files look like
    {"vertices": ["v1", ...],
     "edges": [{"id": "e1", "ends": ["v1", "v2"]}, ...],
     "b": {"v1": "3/2", ...}}
and point / demand files are a single object mapping edge (or vertex) ids to
rationals, optionally wrapped as {"point": {...}} or {"demand": {...}}.
Rationals are written as "p/q" strings (or "p" for integers) everywhere.
"""

import json
import os
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Tuple

from errors import GraphSpecError
from multigraph import BVector, EdgeVector, MultiGraph, build_graph, make_bvector, make_edge_vector
from rational_linalg import format_rational


def _read_json(path: str, what: str, hint: str):
    if not os.path.exists(path):
        raise FileNotFoundError(
            f"❌ {what} not found: {path}\n"
            f"{hint}"
        )
    with open(path, 'r', encoding='utf-8') as f:
        try:
            return json.load(f)
        except json.JSONDecodeError as exc:
            raise GraphSpecError(
                f"❌ {path} is not valid JSON: {exc.msg} (line {exc.lineno}, column {exc.colno})"
            )


def load_graph_file(path: str) -> Tuple[MultiGraph, BVector]:
    description = _read_json(path, 'Graph file', "See samples/ for the expected layout, e.g. samples/c4.json.")
    return build_graph(description)


def _unwrap(document, key: str, path: str) -> Mapping:
    if isinstance(document, Mapping) and set(document) == {key}:
        document = document[key]
    if not isinstance(document, Mapping):
        raise GraphSpecError(f"❌ {path} must hold a JSON object of id -> rational")
    return document


def load_edge_vector(path: str, g: MultiGraph) -> EdgeVector:
    """Missing edges are 0."""
    document = _read_json(path, 'Point file', "Copy a point from the `vertices` output into a JSON file.")
    return make_edge_vector(g, _unwrap(document, 'point', path))


def load_demand(path: str, g: MultiGraph) -> BVector:
    """Missing vertices are 0; negative entries are allowed."""
    document = _read_json(path, 'Demand file', "A demand file maps vertex ids to rationals.")
    return make_bvector(g, _unwrap(document, 'demand', path), allow_negative=True)


def vector_to_document(x: Mapping, order: Iterable) -> Dict[str, str]:
    return {k: format_rational(x[k]) for k in order}


def graph_document(g: MultiGraph, b: Mapping[str, Fraction]) -> Dict:
    """Inverse of build_graph: feeding this back in yields the same graph and b."""
    return {
        'vertices': list(g.vertices),
        'edges': [{'id': e.id, 'ends': list(e.ends)} for e in g.edges],
        'b': vector_to_document(b, g.vertices),
    }


def dumps(document) -> str:
    """Stable JSON text for standard output."""
    return json.dumps(document, indent=2, ensure_ascii=False)
