#!/usr/bin/env python3
"""
Component structure of a multigraph and the nullity of its incidence matrix.

The nullity of I_G is |E| - |V| + B, with B the number of bipartite
components. A component with nullity 0 is a tree or has exactly one cycle,
which is odd. A component with nullity 1 has one even cycle, or two cycles
at least one of them odd, or (theta shape) one even and two odd cycles that
pairwise share an edge. The class is read off from (excess, bipartite) and
can be confirmed on small components by brute-force cycle enumeration.
"""

import logging
import math
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

import networkx as nx

import config
from errors import VerificationError
from multigraph import EdgeId, EdgeSet, EdgeVector, MultiGraph, VertexId
from rational_linalg import ONE, ZERO, RatMatrix, rank_nullity, vectors_rank

logger = logging.getLogger(__name__)


class CycleClass(str, Enum):
    ACYCLIC = 'Acyclic'
    ODD_UNICYCLIC = 'OddUnicyclic'
    EVEN_UNICYCLIC = 'EvenUnicyclic'
    TWO_CYCLES_ONE_ODD = 'TwoCyclesOneOdd'
    ONE_EVEN_TWO_ODD_SHARING = 'OneEvenTwoOddSharing'
    HIGHER = 'Higher'


# Component classes contributing 0 / 1 to the incidence nullity
NULLITY_ZERO_CLASSES = frozenset({CycleClass.ACYCLIC, CycleClass.ODD_UNICYCLIC})
NULLITY_ONE_CLASSES = frozenset({
    CycleClass.EVEN_UNICYCLIC,
    CycleClass.TWO_CYCLES_ONE_ODD,
    CycleClass.ONE_EVEN_TWO_ODD_SHARING,
})


@dataclass(frozen=True)
class Component:
    vertices: Tuple[VertexId, ...]
    edges: Tuple[EdgeId, ...]
    bipartite: bool
    bipartition: Optional[Tuple[Tuple[VertexId, ...], Tuple[VertexId, ...]]]
    tree_edges: Tuple[EdgeId, ...]
    # BFS data from the lowest-id vertex
    depth: Dict[VertexId, int] = field(compare=False, repr=False)
    parent_edge: Dict[VertexId, Optional[EdgeId]] = field(compare=False, repr=False)

    @property
    def root(self) -> VertexId:
        return self.vertices[0]

    @property
    def excess(self) -> int:
        return len(self.edges) - len(self.vertices)

    @property
    def nullity(self) -> int:
        return self.excess + (1 if self.bipartite else 0)


@dataclass(frozen=True)
class ComponentReport:
    components: Tuple[Component, ...]

    @property
    def bipartite_count(self) -> int:
        """B, the number of bipartite components."""
        return sum(1 for c in self.components if c.bipartite)

    def component_of(self, v: VertexId) -> Component:
        for c in self.components:
            if v in c.depth:
                return c
        raise KeyError(v)


def analyze_components(g: MultiGraph) -> ComponentReport:
    """Breadth-first labeling of every component, roots taken in canonical order."""
    depth: Dict[VertexId, int] = {}
    components = []

    for root in g.vertices:
        if root in depth:
            continue
        depth[root] = 0
        parent_edge: Dict[VertexId, Optional[EdgeId]] = {root: None}
        tree = []
        members = [root]
        edge_ids = set()
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for eid in g.delta(v):
                edge_ids.add(eid)
                w = g.edge(eid).other(v)
                if w not in depth:
                    depth[w] = depth[v] + 1
                    parent_edge[w] = eid
                    tree.append(eid)
                    members.append(w)
                    queue.append(w)

        local_depth = {v: depth[v] for v in members}
        edges = g.ordered_edges(edge_ids)
        bipartite = all(
            local_depth[g.edge(e).ends[0]] % 2 != local_depth[g.edge(e).ends[1]] % 2 for e in edges
        )
        vertices = g.ordered_vertices(members)
        bipartition = None
        if bipartite:
            bipartition = (
                tuple(v for v in vertices if local_depth[v] % 2 == 0),
                tuple(v for v in vertices if local_depth[v] % 2 == 1),
            )
        components.append(Component(
            vertices=vertices,
            edges=edges,
            bipartite=bipartite,
            bipartition=bipartition,
            tree_edges=g.ordered_edges(tree),
            depth=local_depth,
            parent_edge=parent_edge,
        ))

    return ComponentReport(tuple(components))


def incidence_matrix(g: MultiGraph) -> RatMatrix:
    """Rows V, columns E; a loop column has a single 1."""
    entries = {}
    for e in g.edges:
        for v in e.ends:
            entries[(v, e.id)] = ONE
    return RatMatrix(g.vertices, g.edge_ids, entries)


def incidence_nullity(g: MultiGraph) -> int:
    """|E| - |V| + B."""
    report = analyze_components(g)
    nullity = len(g.edges) - len(g.vertices) + report.bipartite_count
    if config.DEBUG_CHECKS:
        _, eliminated = rank_nullity(incidence_matrix(g))
        if eliminated != nullity:
            raise VerificationError(
                f"❌ Nullity formula gave {nullity}, elimination gave {eliminated} for {g!r}"
            )
    return nullity


def incidence_left_nullity(g: MultiGraph) -> int:
    """Nullity of the transposed incidence matrix, which is B."""
    count = analyze_components(g).bipartite_count
    if config.DEBUG_CHECKS:
        _, eliminated = rank_nullity(incidence_matrix(g).transpose())
        if eliminated != count:
            raise VerificationError(
                f"❌ Left nullity {eliminated} differs from bipartite component count {count}"
            )
    return count


class _ParityUnionFind:
    """Union-find tracking, per component, vertex count, edge count and bipartiteness."""

    def __init__(self):
        self.parent = {}
        self.parity = {}
        self.vertices = {}
        self.edges = {}
        self.bipartite = {}

    def _add(self, v):
        if v not in self.parent:
            self.parent[v] = v
            self.parity[v] = 0
            self.vertices[v] = 1
            self.edges[v] = 0
            self.bipartite[v] = True

    def find(self, v):
        self._add(v)
        path = []
        while self.parent[v] != v:
            path.append(v)
            v = self.parent[v]
        root = v
        # compress, accumulating parity toward the root
        acc = 0
        for node in reversed(path):
            acc ^= self.parity[node]
            self.parity[node] = acc
            self.parent[node] = root
        return root

    def add_edge(self, u, w) -> int:
        """Add edge u-w; return the nullity of the component it lands in."""
        ru, rw = self.find(u), self.find(w)
        pu, pw = self.parity[u] if u != ru else 0, self.parity[w] if w != rw else 0
        if ru == rw:
            self.edges[ru] += 1
            if pu == pw:
                self.bipartite[ru] = False
        else:
            self.parent[rw] = ru
            self.parity[rw] = pu ^ pw ^ 1
            self.vertices[ru] += self.vertices[rw]
            self.edges[ru] += self.edges[rw] + 1
            self.bipartite[ru] = self.bipartite[ru] and self.bipartite[rw]
        return self.edges[ru] - self.vertices[ru] + (1 if self.bipartite[ru] else 0)


def has_zero_nullity(g: MultiGraph, edge_ids: Iterable[EdgeId]) -> bool:
    """
    True iff the spanning subgraph on edge_ids has incidence nullity 0,
    i.e. every component is a tree or odd-unicyclic. Linear time.
    """
    uf = _ParityUnionFind()
    for eid in edge_ids:
        u, w = g.edge(eid).ends
        if uf.add_edge(u, w) > 0:
            return False
    return True


def _fundamental_cycle(g: MultiGraph, comp: Component, eid: EdgeId) -> FrozenSet[EdgeId]:
    u, w = g.edge(eid).ends
    cycle = {eid}
    while u != w:
        if comp.depth[u] < comp.depth[w]:
            u, w = w, u
        step = comp.parent_edge[u]
        cycle.add(step)
        u = g.edge(step).other(u)
    return frozenset(cycle)


def _component_class(g: MultiGraph, comp: Component) -> CycleClass:
    if comp.excess == -1:
        return CycleClass.ACYCLIC
    if comp.excess == 0:
        return CycleClass.EVEN_UNICYCLIC if comp.bipartite else CycleClass.ODD_UNICYCLIC
    if comp.excess == 1 and not comp.bipartite:
        tree = set(comp.tree_edges)
        first, second = [_fundamental_cycle(g, comp, e) for e in comp.edges if e not in tree]
        if first & second:
            return CycleClass.ONE_EVEN_TWO_ODD_SHARING
        return CycleClass.TWO_CYCLES_ONE_ODD
    return CycleClass.HIGHER


def enumerate_cycles(g: MultiGraph, edge_ids: Iterable[EdgeId]) -> List[EdgeSet]:
    """
    Every cycle inside edge_ids, as an edge set. Exponential; test-scale only.

    A subset is a cycle iff it is connected and each vertex it touches has
    degree 2 (networkx counts a loop twice, which is what we want here).
    """
    edge_ids = g.ordered_edges(edge_ids)
    cycles = []
    for size in range(1, len(edge_ids) + 1):
        for subset in combinations(edge_ids, size):
            nxg = g.subgraph(subset).to_networkx()
            nxg.remove_nodes_from([v for v, d in list(nxg.degree()) if d == 0])
            if all(d == 2 for _, d in nxg.degree()) and nx.is_connected(nxg):
                cycles.append(frozenset(subset))
    return cycles


def structural_cycle_class(g: MultiGraph, comp: Component) -> CycleClass:
    """Classify a component from its enumerated cycles instead of its excess."""
    cycles = enumerate_cycles(g, comp.edges)
    odd = [c for c in cycles if len(c) % 2 == 1]
    if not cycles:
        return CycleClass.ACYCLIC
    if len(cycles) == 1:
        return CycleClass.ODD_UNICYCLIC if odd else CycleClass.EVEN_UNICYCLIC
    if len(cycles) == 2 and odd and not (cycles[0] & cycles[1]):
        return CycleClass.TWO_CYCLES_ONE_ODD
    if len(cycles) == 3 and len(odd) == 2 and all(a & b for a, b in combinations(cycles, 2)):
        return CycleClass.ONE_EVEN_TWO_ODD_SHARING
    return CycleClass.HIGHER


def classify_cycle_structure(g: MultiGraph) -> Tuple[CycleClass, ...]:
    """One CycleClass per component, components in canonical order."""
    report = analyze_components(g)
    tags = []
    for comp in report.components:
        tag = _component_class(g, comp)
        if (config.DEBUG_CHECKS and comp.excess <= 1
                and len(comp.edges) <= config.CYCLE_VALIDATION_MAX_EDGES):
            found = structural_cycle_class(g, comp)
            if found != tag:
                raise VerificationError(
                    f"❌ Component rooted at {comp.root} classified {tag.value} "
                    f"but its cycles say {found.value}"
                )
        tags.append(tag)
    return tuple(tags)


def spanning_core(g: MultiGraph) -> EdgeSet:
    """
    Canonical spanning subgraph H with incidence nullity 0 and the same
    components as g: the BFS tree of each component, plus, for a
    nonbipartite component, its first odd-closing non-tree edge.
    """
    core = set()
    for comp in analyze_components(g).components:
        core.update(comp.tree_edges)
        if comp.bipartite:
            continue
        tree = set(comp.tree_edges)
        for eid in comp.edges:
            if eid in tree:
                continue
            u, w = g.edge(eid).ends
            if comp.depth[u] % 2 == comp.depth[w] % 2:
                core.add(eid)
                break
    return frozenset(core)


def _primitive(vector: EdgeVector) -> EdgeVector:
    """Scale to coprime integers, keeping the sign."""
    denominators = [v.denominator for v in vector.values() if v != 0]
    scale = math.lcm(*denominators) if denominators else 1
    numerators = [int(v * scale) for v in vector.values()]
    divisor = math.gcd(*numerators) or 1
    return {e: Fraction(int(v * scale), divisor) for e, v in vector.items()}


def kernel_basis(g: MultiGraph) -> List[EdgeVector]:
    """
    Explicit basis of ker(I_G), one vector per edge f outside the core H.

    x(f) is e_f plus the unique solution on H of I_H y = -I_G e_f, scaled to
    coprime integers with x(f)_f > 0. On an even cycle the entries are
    +-1; where two odd cycles are joined by a path the path carries +-2.
    """
    from flow_solver import unique_solve

    core = spanning_core(g)
    h = g.subgraph(core)
    basis = []
    for f in g.edges:
        if f.id in core:
            continue
        demand = {v: ZERO for v in g.vertices}
        for v in f.ends:
            demand[v] = -ONE
        y = unique_solve(h, demand)
        vector = {eid: ZERO for eid in g.edge_ids}
        vector.update(y)
        vector[f.id] += ONE
        basis.append(_primitive(vector))

    logger.debug("kernel_basis: %d vectors for %d edges", len(basis), len(g.edges))
    if config.DEBUG_CHECKS:
        matrix = incidence_matrix(g)
        for k in basis:
            if any(matrix.apply(k).values()):
                raise VerificationError(f"❌ Kernel vector {k} is not in ker(I_G)")
        if len(basis) != incidence_nullity(g):
            raise VerificationError("❌ Kernel basis size differs from the incidence nullity")
        if basis and vectors_rank(basis, g.edge_ids) != len(basis):
            raise VerificationError("❌ Kernel basis vectors are linearly dependent")
    return basis
