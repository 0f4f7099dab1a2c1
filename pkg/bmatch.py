#!/usr/bin/env python3
"""
Command-line front end for the b-matching polytope toolkit.

Every subcommand reads a graph file (vertices, edges and b), runs one
analysis and prints a single JSON document on standard output. Rationals are
written as "p/q" strings. Exit codes: 0 ok, 1 infeasible or a negative
answer, 2 bad input or a cap that was hit.

Usage:
    python bmatch.py check-nonempty samples/p3.json
    python bmatch.py vertices samples/c4.json --pretty
    python bmatch.py is-vertex samples/k3.json --point point.json
    python bmatch.py face-lattice samples/twin2.json --dot > lattice.dot
    python bmatch.py oracle-audit samples/pan.json

See README.md for every subcommand and ENV_SETUP.md for the size caps.
"""

import argparse
import logging
import sys
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional

import pandas as pd

import config
from errors import BMatchingError, PreconditionError
from face_lattice import (build_face_lattice, cover_pairs, document_dot, enumerate_face_graphs,
                          lattice_document, trivial_lattice_document)
from feasibility import bipartite_double, check_nonempty, check_strictly_positive, reduce_multi_edges
from flow_solver import solve_flow
from graph_io import dumps, graph_document, load_demand, load_edge_vector, load_graph_file, vector_to_document
from graph_structure import incidence_nullity, kernel_basis
from multigraph import BVector, MultiGraph
from oracle import audit, oracle_dimension, oracle_face_lattice, oracle_is_vertex, oracle_vertices
from polytope import enumerate_vertices, is_edge_pair, is_vertex, polytope_edges, summarize

logger = logging.getLogger(__name__)

EXIT_CODES = {'ok': 0, 'infeasible': 1, 'error': 2}
STATUS_LINES = {'ok': '✅ ok', 'infeasible': '⚠️  infeasible / negative', 'error': '❌ error'}


@dataclass
class CommandResult:
    status: str
    payload: Dict = field(default_factory=dict)
    text: Optional[str] = None  # raw output (DOT) instead of JSON

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.status]

    def document(self) -> Dict:
        return {'status': self.status, **self.payload}


def _point(g: MultiGraph, x) -> Dict[str, str]:
    return vector_to_document(x, g.edge_ids)


def _partition(v1, v2, v3) -> Dict[str, List[str]]:
    return {'V1': list(v1), 'V2': list(v2), 'V3': list(v3)}


def _caps(args) -> Dict:
    return {'max_vertices': args.max_vertices, 'max_edges': args.max_edges}


def _require_points(args, count: int) -> List[str]:
    points = args.point or []
    if len(points) != count:
        raise PreconditionError(
            f"❌ {args.command} needs exactly {count} --point file(s), got {len(points)}.\n\n"
            "Example:\n"
            f"  python bmatch.py {args.command} GRAPH.json" + " --point point.json" * count
        )
    return points


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_check_nonempty(g: MultiGraph, b: BVector, args) -> CommandResult:
    result = check_nonempty(g, b, max_vertices=args.max_vertices)
    if result.feasible:
        return CommandResult('ok', {'feasible': True, 'point': _point(g, result.point)})
    return CommandResult('infeasible', {'feasible': False, 'partition': _partition(result.v1, result.v2, result.v3)})


def cmd_strictly_positive(g: MultiGraph, b: BVector, args) -> CommandResult:
    result = check_strictly_positive(g, b, **_caps(args))
    if result.positive:
        return CommandResult('ok', {'positive': True, 'point': _point(g, result.point)})
    return CommandResult('infeasible', {
        'positive': False,
        'kind': result.kind.value,
        'partition': _partition(result.v1, result.v2, result.v3),
    })


def cmd_dimension(g: MultiGraph, b: BVector, args) -> CommandResult:
    if args.oracle:
        return CommandResult('ok', {'dimension': oracle_dimension(oracle_vertices(g, b, max_edges=args.max_edges))})
    summary = summarize(g, b, **_caps(args))
    return CommandResult('ok', {
        'dimension': summary.dimension,
        'nonempty': summary.nonempty,
        'graph': list(g.ordered_edges(summary.graph)),
        'bipartite_components': summary.bipartite_count,
    })


def cmd_vertices(g: MultiGraph, b: BVector, args) -> CommandResult:
    if args.oracle:
        points = oracle_vertices(g, b, max_edges=args.max_edges)
    else:
        points = [u.coords for u in enumerate_vertices(g, b, **_caps(args))]
    return CommandResult('ok', {'count': len(points), 'vertices': [_point(g, x) for x in points]})


def cmd_is_vertex(g: MultiGraph, b: BVector, args) -> CommandResult:
    x = load_edge_vector(_require_points(args, 1)[0], g)
    if args.oracle:
        answer = oracle_is_vertex(g, b, x)
        payload = {'is_vertex': answer}
    else:
        verdict = is_vertex(g, b, x)
        answer = verdict.is_vertex
        payload = {'is_vertex': answer, 'reason': verdict.reason.value}
    return CommandResult('ok' if answer else 'infeasible', payload)


def cmd_is_edge(g: MultiGraph, b: BVector, args) -> CommandResult:
    first, second = (load_edge_vector(path, g) for path in _require_points(args, 2))
    adjacent = is_edge_pair(g, b, first, second)
    return CommandResult('ok' if adjacent else 'infeasible', {'adjacent': adjacent})


def cmd_edges(g: MultiGraph, b: BVector, args) -> CommandResult:
    vertices = enumerate_vertices(g, b, **_caps(args))
    pairs = polytope_edges(g, b, vertices=vertices)
    return CommandResult('ok', {
        'vertices': [_point(g, u.coords) for u in vertices],
        'edges': [list(pair) for pair in pairs],
    })


def cmd_face_graphs(g: MultiGraph, b: BVector, args) -> CommandResult:
    if not any(b.values()):
        return CommandResult('ok', {'count': 1, 'face_graphs': [[]], 'trivial': True})
    graphs = enumerate_face_graphs(g, b, **_caps(args))
    return CommandResult('ok', {'count': len(graphs), 'face_graphs': [list(h.ordered_edges()) for h in graphs]})


def _oracle_lattice_document(g: MultiGraph, b: BVector, args) -> Dict:
    report = oracle_face_lattice(g, b, max_edges=args.max_edges)
    faces = []
    for support, ids in zip(report.face_supports, report.face_vertex_sets):
        members = [report.vertices[i] for i in sorted(ids)]
        faces.append({'edges': list(g.ordered_edges(support)), 'dim': oracle_dimension(members),
                      'vertex_ids': sorted(ids)})
    covers = cover_pairs(list(report.face_vertex_sets))
    return {'faces': faces, 'covers': [list(pair) for pair in covers]}


def cmd_face_lattice(g: MultiGraph, b: BVector, args) -> CommandResult:
    if not any(b.values()):
        document = trivial_lattice_document()
    elif args.oracle:
        document = _oracle_lattice_document(g, b, args)
    else:
        document = lattice_document(build_face_lattice(g, b, **_caps(args)))
    text = document_dot(document) if args.dot else None
    return CommandResult('ok', document, text=text)


def cmd_kernel_basis(g: MultiGraph, b: BVector, args) -> CommandResult:
    basis = kernel_basis(g)
    return CommandResult('ok', {'nullity': incidence_nullity(g), 'basis': [_point(g, k) for k in basis]})


def cmd_solve_flow(g: MultiGraph, b: BVector, args) -> CommandResult:
    demand = load_demand(args.demand, g) if args.demand else b
    solution = solve_flow(g, demand)
    if solution.feasible:
        return CommandResult('ok', {'feasible': True, 'x': _point(g, solution.x)})
    balance = solution.balance
    us, ws = balance.component.bipartition
    return CommandResult('infeasible', {
        'feasible': False,
        'component': {'U': list(us), 'W': list(ws)},
        'u_sum': str(balance.u_sum),
        'w_sum': str(balance.w_sum),
    })


def cmd_reduce(g: MultiGraph, b: BVector, args) -> CommandResult:
    reduced, mapping = reduce_multi_edges(g)
    return CommandResult('ok', {'graph': graph_document(reduced, b), 'mapping': mapping})


def cmd_double(g: MultiGraph, b: BVector, args) -> CommandResult:
    double = bipartite_double(g, b)
    return CommandResult('ok', {
        'graph': graph_document(double.graph, double.b),
        'correspondence': double.correspondence(),
    })


def cmd_oracle_audit(g: MultiGraph, b: BVector, args) -> CommandResult:
    checks = audit(g, b, **_caps(args))
    passed = all(c.passed for c in checks)
    return CommandResult('ok' if passed else 'infeasible', {
        'passed': passed,
        'checks': [{'name': c.name, 'passed': c.passed, 'detail': c.detail} for c in checks],
    })


COMMANDS: Dict[str, Callable] = {
    'check-nonempty': cmd_check_nonempty,
    'strictly-positive': cmd_strictly_positive,
    'dimension': cmd_dimension,
    'vertices': cmd_vertices,
    'is-vertex': cmd_is_vertex,
    'is-edge': cmd_is_edge,
    'edges': cmd_edges,
    'face-graphs': cmd_face_graphs,
    'face-lattice': cmd_face_lattice,
    'kernel-basis': cmd_kernel_basis,
    'solve-flow': cmd_solve_flow,
    'reduce': cmd_reduce,
    'double': cmd_double,
    'oracle-audit': cmd_oracle_audit,
}


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='bmatch.py',
        description="Exact analysis of fractional perfect b-matching polytopes P(G,b)",
    )
    parser.add_argument('command', choices=sorted(COMMANDS), help="Analysis to run")
    parser.add_argument('graph', type=str, help="Path to the graph JSON file (vertices, edges, b)")
    parser.add_argument('--point', action='append', metavar='FILE', help="Edge vector file (repeat for is-edge)")
    parser.add_argument('--demand', metavar='FILE', help="Vertex demand file for solve-flow (default: b)")
    parser.add_argument('--dot', action='store_true', help="Emit face-lattice output as DOT")
    parser.add_argument('--pretty', action='store_true', help="Human-readable summary instead of JSON")
    parser.add_argument('--oracle', action='store_true', help="Use the brute-force oracle where available")
    parser.add_argument('--max-vertices', type=int, metavar='N', help="Override the vertex caps")
    parser.add_argument('--max-edges', type=int, metavar='N', help="Override the edge cap")
    return parser


def execute(args) -> CommandResult:
    try:
        g, b = load_graph_file(args.graph)
        logger.info("Loaded %s: %d vertices, %d edges", args.graph, len(g.vertices), len(g.edges))
        return COMMANDS[args.command](g, b, args)
    except (BMatchingError, FileNotFoundError) as exc:
        logger.debug("%s failed", args.command, exc_info=True)
        return CommandResult('error', {'error': str(exc)})


def _print_pretty(command: str, result: CommandResult):
    print("=" * 60)
    print(f"📐 {command}: {STATUS_LINES[result.status]}")
    print("=" * 60)
    for key, value in result.payload.items():
        if isinstance(value, list) and value and all(isinstance(row, dict) for row in value):
            table = pd.DataFrame(value)
            print(f"\n📋 {key}:")
            print(table.to_string())
        elif isinstance(value, dict) and value and all(isinstance(v, list) for v in value.values()):
            table = pd.DataFrame([{'part': k, 'members': ', '.join(map(str, v))} for k, v in value.items()])
            print(f"\n📋 {key}:")
            print(table.to_string(index=False))
        elif isinstance(value, dict) and value:
            print(f"\n📋 {key}:")
            print(pd.DataFrame([value]).to_string(index=False))
        else:
            print(f"  {key}: {value}")
    print("=" * 60)


def run_cli(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=config.LOG_LEVEL,
        stream=sys.stderr,
        format='%(levelname)s %(name)s: %(message)s',
    )

    result = execute(args)
    if result.status == 'error':
        logger.error("%s", result.payload['error'])

    if result.text is not None:
        print(result.text)
    elif args.pretty:
        _print_pretty(args.command, result)
    else:
        print(dumps(result.document()))
    return result.exit_code


def main():
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
