"""Directed multigraphs with optional infinite edge bundles.

A graph is a quadruple (vertices, edges, source map, target map); edges carry
string ids so parallel edges are distinguishable.  An "infinite bundle"
(src, tgt) stands for countably many parallel edges from src to tgt; a vertex
that is the target of a bundle is an *infinite receiver*.

Graphs are immutable values.  All operations are pure functions; derived
structures use canonical names so outputs are reproducible byte for byte.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .intmat import IntMatrix


class GraphError(ValueError):
    """A graph value or an argument referring into one is malformed."""


class Edge(NamedTuple):
    id: str
    src: str
    tgt: str


@dataclass(frozen=True)
class DirectedGraph:
    vertices: frozenset
    edges: tuple
    infinite_bundles: frozenset = frozenset()

    # -- basic accessors ---------------------------------------------------

    def sorted_vertices(self):
        return sorted(self.vertices)

    def edge(self, edge_id):
        for e in self.edges:
            if e.id == edge_id:
                return e
        raise GraphError(f"no edge with id {edge_id!r}")

    def has_vertex(self, v):
        return v in self.vertices

    def incoming(self, v):
        """Edges with target v, sorted by id (canonical order for coproducts)."""
        self._require_vertex(v)
        return tuple(sorted((e for e in self.edges if e.tgt == v), key=lambda e: e.id))

    def outgoing(self, v):
        self._require_vertex(v)
        return tuple(sorted((e for e in self.edges if e.src == v), key=lambda e: e.id))

    def incoming_bundles(self, v):
        self._require_vertex(v)
        return tuple(sorted(b for b in self.infinite_bundles if b[1] == v))

    def outgoing_bundles(self, v):
        self._require_vertex(v)
        return tuple(sorted(b for b in self.infinite_bundles if b[0] == v))

    def edge_set(self):
        """Edges as a set of (id, src, tgt) triples (order-insensitive view)."""
        return frozenset(self.edges)

    def labeled_eq(self, other):
        """Equality as labeled sets: same vertices, same edge triples, same bundles."""
        return (
            self.vertices == other.vertices
            and self.edge_set() == other.edge_set()
            and self.infinite_bundles == other.infinite_bundles
        )

    def _require_vertex(self, v):
        if v not in self.vertices:
            raise GraphError(f"vertex {v!r} not in graph")


def graph(vertices, edges=(), bundles=()):
    """Build a DirectedGraph from vertex names and (id, src, tgt) triples.

    Raises GraphError if the result fails validation.
    """
    g = DirectedGraph(
        vertices=frozenset(vertices),
        edges=tuple(Edge(*t) for t in edges),
        infinite_bundles=frozenset(tuple(b) for b in bundles),
    )
    require_valid(g)
    return g


def validate(g):
    """Return a list of human-readable violations (empty iff the graph is valid)."""
    problems = []
    if not g.vertices:
        problems.append("vertex set is empty")
    seen = set()
    for e in g.edges:
        if e.id in seen:
            problems.append(f"duplicate edge id {e.id!r}")
        seen.add(e.id)
        if e.src not in g.vertices:
            problems.append(f"edge {e.id!r} has unknown source {e.src!r}")
        if e.tgt not in g.vertices:
            problems.append(f"edge {e.id!r} has unknown target {e.tgt!r}")
    for b in g.infinite_bundles:
        if len(b) != 2:
            problems.append(f"bundle {b!r} is not a (src, tgt) pair")
            continue
        src, tgt = b
        if src not in g.vertices:
            problems.append(f"bundle {b!r} has unknown source {src!r}")
        if tgt not in g.vertices:
            problems.append(f"bundle {b!r} has unknown target {tgt!r}")
    return problems


def require_valid(g):
    problems = validate(g)
    if problems:
        raise GraphError("; ".join(problems))
    return g


# -- vertex classification -------------------------------------------------


@dataclass(frozen=True)
class VertexClass:
    is_source: bool
    is_sink: bool
    is_infinite_receiver: bool


def classify_vertex(g, v):
    """Source = no incoming edges or bundles; sink = no outgoing; receiver of a
    bundle is an infinite receiver (hence never a source)."""
    g._require_vertex(v)
    has_in = any(e.tgt == v for e in g.edges) or any(
        b[1] == v for b in g.infinite_bundles
    )
    has_out = any(e.src == v for e in g.edges) or any(
        b[0] == v for b in g.infinite_bundles
    )
    infinite = any(b[1] == v for b in g.infinite_bundles)
    return VertexClass(
        is_source=not has_in, is_sink=not has_out, is_infinite_receiver=infinite
    )


def sources(g):
    return tuple(v for v in g.sorted_vertices() if classify_vertex(g, v).is_source)


def sinks(g):
    return tuple(v for v in g.sorted_vertices() if classify_vertex(g, v).is_sink)


def infinite_receivers(g):
    return tuple(
        v for v in g.sorted_vertices() if classify_vertex(g, v).is_infinite_receiver
    )


# -- reachability ------------------------------------------------------------


def successor_map(g):
    """v -> sorted list of targets reachable by one edge or bundle from v."""
    succ = {v: set() for v in g.vertices}
    for e in g.edges:
        succ[e.src].add(e.tgt)
    for a, b in g.infinite_bundles:
        succ[a].add(b)
    return {v: sorted(ts) for v, ts in succ.items()}


def reachable_from(g, v):
    """Vertices reachable from v by a nonempty directed path (bundles count)."""
    g._require_vertex(v)
    succ = successor_map(g)
    seen = set()
    frontier = list(succ[v])
    while frontier:
        w = frontier.pop()
        if w in seen:
            continue
        seen.add(w)
        frontier.extend(succ[w])
    return frozenset(seen)


def path_exists(g, v, w):
    """True iff a nonempty directed path runs from v to w."""
    return w in reachable_from(g, v)


def is_acyclic(g):
    return all(v not in reachable_from(g, v) for v in g.vertices)


# -- strongly connected structure -------------------------------------------


def strongly_connected_components(g):
    """SCCs as a tuple of frozensets, sorted by their sorted member lists.

    Iterative Tarjan; deterministic because roots and successors are visited
    in sorted order.
    """
    succ = successor_map(g)
    index = {}
    low = {}
    onstack = set()
    stack = []
    comps = []
    counter = 0
    for root in g.sorted_vertices():
        if root in index:
            continue
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        onstack.add(root)
        work = [(root, iter(succ[root]))]
        while work:
            v, it = work[-1]
            pushed = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    onstack.add(w)
                    work.append((w, iter(succ[w])))
                    pushed = True
                    break
                if w in onstack:
                    low[v] = min(low[v], index[w])
            if pushed:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = set()
                while True:
                    w = stack.pop()
                    onstack.discard(w)
                    comp.add(w)
                    if w == v:
                        break
                comps.append(frozenset(comp))
    return tuple(sorted(comps, key=sorted))


def component_name(comp):
    return "{" + ",".join(sorted(comp)) + "}"


@dataclass(frozen=True)
class Condensation:
    components: tuple
    quotient: DirectedGraph

    def component_of(self, v):
        for comp in self.components:
            if v in comp:
                return comp
        raise GraphError(f"vertex {v!r} not in any component")


def condensation(g):
    """Quotient by strongly connected components.

    The quotient graph has one vertex per component and at most one edge per
    ordered component pair; an edge runs X -> Y iff X != Y and some edge or
    bundle of g runs from X into Y.
    """
    comps = strongly_connected_components(g)
    comp_of = {}
    for comp in comps:
        for v in comp:
            comp_of[v] = comp
    arrows = set()
    for e in g.edges:
        a, b = comp_of[e.src], comp_of[e.tgt]
        if a != b:
            arrows.add((component_name(a), component_name(b)))
    for src, tgt in g.infinite_bundles:
        a, b = comp_of[src], comp_of[tgt]
        if a != b:
            arrows.add((component_name(a), component_name(b)))
    quotient = graph(
        [component_name(c) for c in comps],
        [(f"{a}->{b}", a, b) for a, b in sorted(arrows)],
    )
    return Condensation(components=comps, quotient=quotient)


def is_irreducible(g):
    """True iff a directed path runs between every ordered pair of distinct
    vertices.  Single-vertex graphs are vacuously irreducible."""
    return len(strongly_connected_components(g)) == 1


def cohereditary_irreducible_subsets(g):
    """Nonempty vertex sets X that are irreducible (all ordered pairs of
    distinct members joined by a path in g) and cohereditary (t(e) in X
    implies s(e) in X, bundles included).

    These are exactly the source components of the condensation; their count
    is the exponent m in the poset-diagram count |P|**m.
    """
    cond = condensation(g)
    quotient = cond.quotient
    out = []
    for comp in cond.components:
        name = component_name(comp)
        if classify_vertex(quotient, name).is_source:
            out.append(comp)
    return tuple(sorted(out, key=sorted))


# -- the plus construction ---------------------------------------------------


def plus_construction(g):
    """Adjoin a vertex v+ for each infinite receiver v, and for every edge e
    leaving such a v a copy e+ : v+ -> t(e); bundles leaving v beget bundles
    leaving v+.  Returns g itself when there are no infinite receivers."""
    recv = set(infinite_receivers(g))
    if not recv:
        return g
    vertices = set(g.vertices) | {f"{v}+" for v in recv}
    edges = list(g.edges)
    for e in g.edges:
        if e.src in recv:
            edges.append(Edge(f"{e.id}+", f"{e.src}+", e.tgt))
    bundles = set(g.infinite_bundles)
    for a, b in g.infinite_bundles:
        if a in recv:
            bundles.add((f"{a}+", b))
    out = DirectedGraph(
        vertices=frozenset(vertices),
        edges=tuple(edges),
        infinite_bundles=frozenset(bundles),
    )
    problems = validate(out)
    if problems:
        raise GraphError(
            "plus construction produced name collisions: " + "; ".join(problems)
        )
    return out


# -- adjacency ----------------------------------------------------------------


def adjacency_matrix(g, ordering=None):
    """Vertex-ordered edge-count matrix: entry (i, j) counts edges from
    ordering[i] to ordering[j].  Undefined for graphs with infinite bundles."""
    if g.infinite_bundles:
        raise GraphError("adjacency matrix is undefined for graphs with bundles")
    if ordering is None:
        ordering = g.sorted_vertices()
    ordering = list(ordering)
    if sorted(ordering) != g.sorted_vertices():
        raise GraphError("ordering must be a permutation of the vertex set")
    pos = {v: i for i, v in enumerate(ordering)}
    n = len(ordering)
    rows = [[0] * n for _ in range(n)]
    for e in g.edges:
        rows[pos[e.src]][pos[e.tgt]] += 1
    return IntMatrix.from_rows(rows)


def is_nontrivial(g):
    """True iff the adjacency matrix is not a permutation matrix."""
    a = adjacency_matrix(g)
    n = a.rows
    for i in range(n):
        if sum(a.entries[i]) != 1 or any(x not in (0, 1) for x in a.entries[i]):
            return True
    for j in range(n):
        if sum(a.entries[i][j] for i in range(n)) != 1:
            return True
    return False
