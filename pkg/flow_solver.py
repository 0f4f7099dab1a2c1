#!/usr/bin/env python3
"""
Solve I_G x = a for vertex demands a of any sign.

A solution exists iff every bipartite component has equal demand on both
sides. When every component is a tree or odd-unicyclic the solution is
unique and is written down edge by edge:

    x_e = k_e * sum over v in V_{G-e}(t_e) of (-1)^d(v, t_e) * a_v

with k_e = 1/2 on a nonloop edge of the odd cycle L and 1 otherwise, and t_e
the endpoint of e farther from L (lowest-id endpoint when either will do).
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, Mapping, Optional

import networkx as nx

from errors import ChoiceDependenceError, PreconditionError, VerificationError
from graph_structure import Component, analyze_components, spanning_core
from multigraph import DemandVector, EdgeId, EdgeVector, MultiGraph, VertexId, incidence_sums, make_bvector
from rational_linalg import ZERO

logger = logging.getLogger(__name__)

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class BalanceCheck:
    satisfied: bool
    component: Optional[Component] = None
    u_sum: Optional[Fraction] = None
    w_sum: Optional[Fraction] = None

    def __bool__(self):
        return self.satisfied


@dataclass(frozen=True)
class FlowSolution:
    x: Optional[EdgeVector]
    balance: BalanceCheck

    @property
    def feasible(self) -> bool:
        return self.x is not None


def flow_balance_check(g: MultiGraph, a: Mapping[VertexId, Fraction]) -> BalanceCheck:
    """Sum over U_C equals sum over W_C for every bipartite component C."""
    a = make_bvector(g, a, allow_negative=True)
    for comp in analyze_components(g).components:
        if not comp.bipartite:
            continue
        us, ws = comp.bipartition
        u_sum = sum((a[v] for v in us), ZERO)
        w_sum = sum((a[v] for v in ws), ZERO)
        if u_sum != w_sum:
            return BalanceCheck(False, comp, u_sum, w_sum)
    return BalanceCheck(True)


def _cycle_edges(g: MultiGraph, comp: Component) -> FrozenSet[EdgeId]:
    """Edges left after repeatedly stripping leaves: the cycle L, or nothing for a tree."""
    degree = {v: 0 for v in comp.vertices}
    for eid in comp.edges:
        for v in g.edge(eid).ends:
            degree[v] += 1
    alive = set(comp.edges)
    leaves = [v for v in comp.vertices if degree[v] == 1]
    while leaves:
        v = leaves.pop()
        if degree[v] != 1:
            continue
        eid = next(e for e in g.delta(v) if e in alive)
        alive.discard(eid)
        w = g.edge(eid).other(v)
        degree[v] -= 1
        degree[w] -= 1
        if degree[w] == 1:
            leaves.append(w)
    return frozenset(alive)


def _alternating_sum(nxg: nx.MultiGraph, g: MultiGraph, eid: EdgeId, t: VertexId, a: DemandVector) -> Fraction:
    """Sum of (-1)^d(v,t) a_v over the component of t in G - e."""
    u, w = g.edge(eid).ends
    nxg.remove_edge(u, w, key=eid)
    try:
        distances = nx.single_source_shortest_path_length(nxg, t)
    finally:
        nxg.add_edge(u, w, key=eid)
    return sum((a[v] if d % 2 == 0 else -a[v] for v, d in distances.items()), ZERO)


def _reaches(nxg: nx.MultiGraph, g: MultiGraph, eid: EdgeId, start: VertexId, targets) -> bool:
    u, w = g.edge(eid).ends
    nxg.remove_edge(u, w, key=eid)
    try:
        return any(v in targets for v in nx.node_connected_component(nxg, start))
    finally:
        nxg.add_edge(u, w, key=eid)


def unique_solve(g: MultiGraph, a: Mapping[VertexId, Fraction]) -> EdgeVector:
    """
    The unique x with I_G x = a.

    Requires every component of g to be a tree or odd-unicyclic, and a to
    pass flow_balance_check. The result is checked by substitution.
    """
    a = make_bvector(g, a, allow_negative=True)
    report = analyze_components(g)
    for comp in report.components:
        if comp.nullity != 0:
            raise PreconditionError(
                f"❌ unique_solve needs incidence nullity 0, but the component rooted at "
                f"{comp.root} has nullity {comp.nullity}.\n\n"
                "Every component must be a tree or contain exactly one cycle, of odd length.\n"
                "Use solve_flow for a (non-unique) solution instead."
            )
    balance = flow_balance_check(g, a)
    if not balance:
        raise PreconditionError(
            f"❌ Demands are unbalanced on the bipartite component rooted at {balance.component.root}: "
            f"{balance.u_sum} on one side vs {balance.w_sum} on the other."
        )

    cycle: Dict[VertexId, FrozenSet[EdgeId]] = {}
    cycle_vertices: Dict[VertexId, FrozenSet[VertexId]] = {}
    for comp in report.components:
        edges = _cycle_edges(g, comp)
        cycle[comp.root] = edges
        cycle_vertices[comp.root] = frozenset(v for eid in edges for v in g.edge(eid).ends)

    nxg = g.to_networkx()
    x: EdgeVector = {}
    for e in g.edges:
        comp = report.component_of(e.ends[0])
        on_cycle = e.id in cycle[comp.root]
        low, high = sorted(e.ends, key=g.vertex_index)

        if e.is_loop:
            k, t, check = 1, low, False
        elif on_cycle:
            k, t, check = HALF, low, True
        elif not cycle[comp.root]:
            k, t, check = 1, low, True
        else:
            # the far side of a pendant tree edge is the one that cannot reach L
            k, check = 1, False
            t = high if _reaches(nxg, g, e.id, low, cycle_vertices[comp.root]) else low

        x[e.id] = k * _alternating_sum(nxg, g, e.id, t, a)
        if check:
            other = k * _alternating_sum(nxg, g, e.id, high if t == low else low, a)
            if other != x[e.id]:
                raise ChoiceDependenceError(e.id, x[e.id], other)

    if incidence_sums(g, x) != a:
        raise VerificationError(f"❌ Closed-form solution failed substitution on {g!r}")
    return x


def solve_flow(g: MultiGraph, a: Mapping[VertexId, Fraction]) -> FlowSolution:
    """
    Some x with I_G x = a, supported on the canonical spanning core H
    (BFS trees plus one odd-closing edge per nonbipartite component).
    """
    a = make_bvector(g, a, allow_negative=True)
    balance = flow_balance_check(g, a)
    if not balance:
        logger.debug("solve_flow: balance fails at component rooted at %s", balance.component.root)
        return FlowSolution(None, balance)

    core = spanning_core(g)
    x = {eid: ZERO for eid in g.edge_ids}
    x.update(unique_solve(g.subgraph(core), a))
    if incidence_sums(g, x) != a:
        raise VerificationError(f"❌ solve_flow result failed substitution on {g!r}")
    return FlowSolution(x, balance)
