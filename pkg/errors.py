#!/usr/bin/env python3
"""
Exceptions raised by the b-matching polytope toolkit.

Everything derives from BMatchingError so the CLI can turn any of them into
an exit code of 2. Where a builtin fits, the builtin is a second base class,
so callers that only know ValueError / RuntimeError still catch them.
"""


class BMatchingError(Exception):
    """Base class for all toolkit errors."""


class ConfigError(BMatchingError, ValueError):
    """A setting in the environment or .env file is malformed."""


class GraphSpecError(BMatchingError, ValueError):
    """A graph, weight vector or input document is invalid."""


class UnknownVertexError(GraphSpecError):
    def __init__(self, vertex_id):
        self.vertex_id = vertex_id
        super().__init__(f"❌ Unknown vertex id: {vertex_id!r}")


class UnknownEdgeError(GraphSpecError):
    def __init__(self, edge_id):
        self.edge_id = edge_id
        super().__init__(f"❌ Unknown edge id: {edge_id!r}")


class NotBipartitionError(GraphSpecError):
    """The (U, W) pair handed in is not a bipartition for the graph."""


class IndexMismatchError(BMatchingError, ValueError):
    """A vector is not indexed the way the matrix expects."""


class PreconditionError(BMatchingError, ValueError):
    """An operation was called outside its documented domain."""


class ZeroDemandError(PreconditionError):
    def __init__(self, operation: str):
        super().__init__(
            f"❌ {operation} needs a nonzero b.\n\n"
            "With b = 0 the polytope is the single point 0 and its lattice is\n"
            "the trivial two-element chain; it is not built here."
        )


class NotAFaceGraphError(PreconditionError):
    def __init__(self, edges):
        self.edges = tuple(edges)
        shown = ', '.join(self.edges) if self.edges else '(no edges)'
        super().__init__(
            f"❌ Not a graph of any face: {{{shown}}}\n\n"
            "A face graph is a union of vertex supports. Run `face-graphs`\n"
            "to list the valid ones for this instance."
        )


class HostMismatchError(PreconditionError):
    def __init__(self):
        super().__init__("❌ Face graphs from different host graphs cannot be combined")


class NotInPolytopeError(PreconditionError):
    def __init__(self, reason: str):
        self.reason = reason
        super().__init__(f"❌ Point is not in P(G,b): {reason}")


class EmptyEdgeSetError(PreconditionError):
    def __init__(self):
        super().__init__(
            "❌ Strict positivity is only defined for graphs with at least one edge.\n\n"
            "For an edgeless graph use check-nonempty instead: P(G,b) is {0}\n"
            "when b = 0 and empty otherwise."
        )


class CapExceededError(BMatchingError, RuntimeError):
    """A desk-scale enumeration limit was hit. This says nothing about feasibility."""

    def __init__(self, cap_name: str, limit: int, actual: int, flag: str, env_var: str):
        self.cap_name = cap_name
        self.limit = limit
        self.actual = actual
        super().__init__(
            f"❌ {cap_name} cap exceeded: instance has {actual}, limit is {limit}.\n\n"
            "This is a size guard, not an infeasibility verdict. To go further:\n"
            f"  - pass {flag} N on the command line, or\n"
            f"  - set {env_var}=N in your .env file\n\n"
            "Enumeration is exponential; expect long runtimes past the defaults."
        )


class VerificationError(BMatchingError, RuntimeError):
    """An exact substitution or cross-check disagreed. Always a bug, never input."""


class ChoiceDependenceError(VerificationError):
    def __init__(self, edge_id, first, second):
        self.edge_id = edge_id
        super().__init__(
            f"❌ Endpoint choice changed the solved value on edge {edge_id!r}: "
            f"{first} vs {second}"
        )
