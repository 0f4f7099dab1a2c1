"""
Shared pytest fixtures: the named sample graphs, the exhaustive family of
small multigraphs, and a seeded sampler of b vectors over {0, 1/2, 1, 2}.
"""

import random
from fractions import Fraction
from itertools import combinations_with_replacement
from pathlib import Path

import pytest

import config
from graph_io import load_graph_file
from multigraph import MultiGraph

SAMPLES = Path(__file__).parent / 'samples'
B_VALUES = (Fraction(0), Fraction(1, 2), Fraction(1), Fraction(2))
SEED = 20240917


@pytest.fixture(autouse=True)
def debug_checks(monkeypatch):
    """Every test runs with the internal cross-checks switched on."""
    monkeypatch.setattr(config, 'DEBUG_CHECKS', True)


def _sample(name: str) -> MultiGraph:
    return load_graph_file(str(SAMPLES / f"{name}.json"))[0]


@pytest.fixture
def sample_path():
    return lambda name: str(SAMPLES / f"{name}.json")


@pytest.fixture
def loop1():
    return _sample('loop1')


@pytest.fixture
def p3():
    return _sample('p3')


@pytest.fixture
def k3():
    return _sample('k3')


@pytest.fixture
def c4():
    return _sample('c4')


@pytest.fixture
def twin():
    return _sample('twin')


@pytest.fixture
def twin2():
    return _sample('twin2')


@pytest.fixture
def pan():
    return _sample('pan')


@pytest.fixture
def k3d():
    return _sample('k3d')


@pytest.fixture
def bowtie():
    return _sample('bowtie')


@pytest.fixture
def ones():
    """b = 1 on every vertex."""
    return lambda g: {v: Fraction(1) for v in g.vertices}


def small_multigraphs(max_vertices: int = 4, max_edges: int = 4):
    """Every labelled multigraph (loops and parallels allowed) up to the given sizes."""
    for n in range(1, max_vertices + 1):
        vertices = [f"v{i}" for i in range(1, n + 1)]
        pairs = [(vertices[i], vertices[j]) for i in range(n) for j in range(i, n)]
        for m in range(max_edges + 1):
            for chosen in combinations_with_replacement(pairs, m):
                edges = [(f"e{k}", u, w) for k, (u, w) in enumerate(chosen, 1)]
                yield MultiGraph(vertices, edges)


@pytest.fixture(scope='session')
def small_family():
    return list(small_multigraphs())


@pytest.fixture(scope='session')
def tiny_family():
    return list(small_multigraphs(max_vertices=3, max_edges=3))


@pytest.fixture(scope='session')
def sampled_instances(small_family):
    """500 (graph, b) pairs drawn with a fixed seed."""
    rng = random.Random(SEED)
    instances = []
    for _ in range(500):
        g = rng.choice(small_family)
        b = {v: rng.choice(B_VALUES) for v in g.vertices}
        instances.append((g, b))
    return instances
