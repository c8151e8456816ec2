"""The six flow-equivalence graph constructions, with precondition validation.

Derived vertices and edges follow a fixed naming scheme so outputs are
reproducible exactly:

    (v,n)      delayed / split copy of vertex v at level n
    e_{v,n}    chain edge at vertex v, level n
    (e,n)      split copy of edge e at level n
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import (
    DirectedGraph,
    Edge,
    classify_vertex,
    require_valid,
    sinks,
    sources,
    validate,
)
from .util import frozendict


class MoveError(ValueError):
    """A move precondition or spec invariant is violated."""


def indexed_vertex(v, n):
    return f"({v},{n})"


def indexed_edge(e, n):
    return f"({e},{n})"


def chain_edge(v, n):
    return "e_{" + f"{v},{n}" + "}"


def _freeze(mapping):
    return mapping if isinstance(mapping, frozendict) else frozendict(mapping)


def _check_totality(problems, mapping, keys, what):
    keys = set(keys)
    have = set(mapping)
    for k in sorted(keys - have):
        problems.append(f"missing value for {what} {k!r}")
    for k in sorted(have - keys, key=repr):
        problems.append(f"value given for unknown {what} {k!r}")
    for k, val in mapping.items():
        if k in keys and (not isinstance(val, int) or isinstance(val, bool) or val < 0):
            problems.append(f"value for {what} {k!r} must be a nonnegative integer")


def _no_bundles(problems, g, move):
    if g.infinite_bundles:
        problems.append(f"{move} requires a graph without infinite bundles")


def _finish(vertices, edges, move):
    out = DirectedGraph(vertices=frozenset(vertices), edges=tuple(edges))
    problems = validate(out)
    if problems:
        raise MoveError(f"{move} produced an invalid graph: " + "; ".join(problems))
    return out


# -- sink removal --------------------------------------------------------------


def remove_sink(g, w):
    """Delete a sink w (which must not also be a source) and every edge or
    bundle with target w."""
    require_valid(g)
    cls = classify_vertex(g, w)  # raises on unknown vertex
    if not cls.is_sink:
        raise MoveError(f"vertex {w!r} is not a sink")
    if cls.is_source:
        raise MoveError(f"vertex {w!r} is a sink but also a source")
    return DirectedGraph(
        vertices=frozenset(v for v in g.vertices if v != w),
        edges=tuple(e for e in g.edges if e.tgt != w),
        infinite_bundles=frozenset(b for b in g.infinite_bundles if b[1] != w),
    )


# -- out-delay -----------------------------------------------------------------


@dataclass(frozen=True)
class OutDelaySpec:
    d_vertices: frozendict
    d_edges: frozendict

    def __post_init__(self):
        object.__setattr__(self, "d_vertices", _freeze(self.d_vertices))
        object.__setattr__(self, "d_edges", _freeze(self.d_edges))


def validate_out_delay(g, spec):
    problems = []
    _no_bundles(problems, g, "out_delay")
    _check_totality(problems, spec.d_vertices, g.vertices, "vertex")
    _check_totality(problems, spec.d_edges, (e.id for e in g.edges), "edge")
    if problems:
        return problems
    for e in g.edges:
        if spec.d_edges[e.id] > spec.d_vertices[e.src]:
            problems.append(
                f"d({e.id})={spec.d_edges[e.id]} exceeds d({e.src})={spec.d_vertices[e.src]}"
            )
    return problems


def out_delay(g, spec):
    """Insert a waiting line of d(v) extra vertices after each vertex; each
    edge departs from level d(e) of its source and arrives at level 0."""
    require_valid(g)
    problems = validate_out_delay(g, spec)
    if problems:
        raise MoveError("; ".join(problems))
    dv, de = spec.d_vertices, spec.d_edges
    vertices = [
        indexed_vertex(v, n) for v in g.sorted_vertices() for n in range(dv[v] + 1)
    ]
    edges = [
        Edge(e.id, indexed_vertex(e.src, de[e.id]), indexed_vertex(e.tgt, 0))
        for e in g.edges
    ]
    for v in g.sorted_vertices():
        for n in range(1, dv[v] + 1):
            edges.append(
                Edge(chain_edge(v, n), indexed_vertex(v, n - 1), indexed_vertex(v, n))
            )
    return _finish(vertices, edges, "out_delay")


# -- in-delay ------------------------------------------------------------------


@dataclass(frozen=True)
class InDelaySpec:
    d_edges: frozendict

    def __post_init__(self):
        object.__setattr__(self, "d_edges", _freeze(self.d_edges))


def in_delay_vertex_delays(g, spec):
    """Derived vertex delays: d(v) = max of d(e) over incoming edges, 0 at sources."""
    out = {}
    for v in g.sorted_vertices():
        incoming = g.incoming(v)
        out[v] = max((spec.d_edges[e.id] for e in incoming), default=0)
    return out


def validate_in_delay(g, spec):
    problems = []
    if g.infinite_bundles:
        problems.append("in_delay requires a graph with no infinite receivers")
    _check_totality(problems, spec.d_edges, (e.id for e in g.edges), "edge")
    return problems


def in_delay(g, spec):
    """Insert a waiting line of d(v) extra vertices before each vertex; each
    edge departs from level 0 and arrives at level d(e) of its target."""
    require_valid(g)
    problems = validate_in_delay(g, spec)
    if problems:
        raise MoveError("; ".join(problems))
    dv = in_delay_vertex_delays(g, spec)
    de = spec.d_edges
    vertices = [
        indexed_vertex(v, n) for v in g.sorted_vertices() for n in range(dv[v] + 1)
    ]
    edges = [
        Edge(e.id, indexed_vertex(e.src, 0), indexed_vertex(e.tgt, de[e.id]))
        for e in g.edges
    ]
    for v in g.sorted_vertices():
        for n in range(1, dv[v] + 1):
            edges.append(
                Edge(chain_edge(v, n), indexed_vertex(v, n), indexed_vertex(v, n - 1))
            )
    return _finish(vertices, edges, "in_delay")


# -- out-split -----------------------------------------------------------------


@dataclass(frozen=True)
class OutSplitSpec:
    p_vertices: frozendict
    p_edges: frozendict

    def __post_init__(self):
        object.__setattr__(self, "p_vertices", _freeze(self.p_vertices))
        object.__setattr__(self, "p_edges", _freeze(self.p_edges))


def validate_out_split(g, spec):
    problems = []
    _no_bundles(problems, g, "out_split")
    _check_totality(problems, spec.p_vertices, g.vertices, "vertex")
    _check_totality(problems, spec.p_edges, (e.id for e in g.edges), "edge")
    if problems:
        return problems
    for e in g.edges:
        if spec.p_edges[e.id] > spec.p_vertices[e.src]:
            problems.append(
                f"p({e.id})={spec.p_edges[e.id]} exceeds p({e.src})={spec.p_vertices[e.src]}"
            )
    for v in g.sorted_vertices():
        if classify_vertex(g, v).is_source and spec.p_vertices[v] != 0:
            problems.append(f"p({v})={spec.p_vertices[v]} but {v!r} is a source")
    return problems


def out_split(g, spec):
    """Split each vertex v into copies (v,0)..(v,p(v)); each edge e fans out
    into copies (e,n) targeting every level of t(e), departing from level p(e)."""
    require_valid(g)
    problems = validate_out_split(g, spec)
    if problems:
        raise MoveError("; ".join(problems))
    pv, pe = spec.p_vertices, spec.p_edges
    vertices = [
        indexed_vertex(v, n) for v in g.sorted_vertices() for n in range(pv[v] + 1)
    ]
    edges = [
        Edge(
            indexed_edge(e.id, n),
            indexed_vertex(e.src, pe[e.id]),
            indexed_vertex(e.tgt, n),
        )
        for e in g.edges
        for n in range(pv[e.tgt] + 1)
    ]
    return _finish(vertices, edges, "out_split")


# -- in-split ------------------------------------------------------------------


@dataclass(frozen=True)
class InSplitSpec:
    p_vertices: frozendict
    p_edges: frozendict

    def __post_init__(self):
        object.__setattr__(self, "p_vertices", _freeze(self.p_vertices))
        object.__setattr__(self, "p_edges", _freeze(self.p_edges))


def validate_in_split(g, spec):
    problems = []
    if g.infinite_bundles:
        problems.append("in_split requires a graph with no infinite receivers")
    _check_totality(problems, spec.p_vertices, g.vertices, "vertex")
    _check_totality(problems, spec.p_edges, (e.id for e in g.edges), "edge")
    if problems:
        return problems
    for e in g.edges:
        if spec.p_edges[e.id] > spec.p_vertices[e.tgt]:
            problems.append(
                f"p({e.id})={spec.p_edges[e.id]} exceeds p({e.tgt})={spec.p_vertices[e.tgt]}"
            )
    for v in g.sorted_vertices():
        if classify_vertex(g, v).is_source:
            if spec.p_vertices[v] != 0:
                problems.append(f"p({v})={spec.p_vertices[v]} but {v!r} is a source")
        else:
            seen = {spec.p_edges[e.id] for e in g.incoming(v)}
            missing = set(range(spec.p_vertices[v] + 1)) - seen
            if missing:
                problems.append(
                    f"edge values at t^-1({v}) are not surjective onto "
                    f"0..{spec.p_vertices[v]} (missing {sorted(missing)})"
                )
    return problems


def in_split(g, spec):
    """Split each vertex v into copies (v,0)..(v,p(v)); each edge e fans out
    into copies (e,n) departing from every level of s(e), arriving at level p(e)."""
    require_valid(g)
    problems = validate_in_split(g, spec)
    if problems:
        raise MoveError("; ".join(problems))
    pv, pe = spec.p_vertices, spec.p_edges
    vertices = [
        indexed_vertex(v, n) for v in g.sorted_vertices() for n in range(pv[v] + 1)
    ]
    edges = [
        Edge(
            indexed_edge(e.id, n),
            indexed_vertex(e.src, n),
            indexed_vertex(e.tgt, pe[e.id]),
        )
        for e in g.edges
        for n in range(pv[e.src] + 1)
    ]
    return _finish(vertices, edges, "in_split")


# -- truncated heads and tails -------------------------------------------------
#
# The untruncated constructions attach an infinite chain at every source
# (heads) or sink (tails).  This artifact represents only finite graphs, so
# these operations cut the chain at a given depth and flag the result as an
# approximation.  No equivalence claim is made about truncations.


@dataclass(frozen=True)
class TruncatedMove:
    graph: DirectedGraph
    depth: int
    is_exact: bool  # True when nothing was attached, so the result is not approximate

    @property
    def is_approximation(self):
        return not self.is_exact


def add_heads_truncated(g, depth):
    """Attach a depth-long incoming chain (v,depth) -> ... -> (v,1) -> v at
    every source v.  Exact (and equal to g) when g has no sources."""
    require_valid(g)
    if depth < 1:
        raise MoveError("depth must be >= 1")
    srcs = sources(g)
    if not srcs:
        return TruncatedMove(graph=g, depth=depth, is_exact=True)
    vertices = list(g.vertices)
    edges = list(g.edges)
    for v in srcs:
        for n in range(1, depth + 1):
            vertices.append(indexed_vertex(v, n))
            tgt = v if n == 1 else indexed_vertex(v, n - 1)
            edges.append(Edge(chain_edge(v, n), indexed_vertex(v, n), tgt))
    out = DirectedGraph(
        vertices=frozenset(vertices),
        edges=tuple(edges),
        infinite_bundles=g.infinite_bundles,
    )
    problems = validate(out)
    if problems:
        raise MoveError("add_heads produced an invalid graph: " + "; ".join(problems))
    return TruncatedMove(graph=out, depth=depth, is_exact=False)


def add_tails_truncated(g, depth):
    """Attach a depth-long outgoing chain w -> (w,1) -> ... -> (w,depth) at
    every sink w.  Exact (and equal to g) when g has no sinks."""
    require_valid(g)
    if depth < 1:
        raise MoveError("depth must be >= 1")
    snks = sinks(g)
    if not snks:
        return TruncatedMove(graph=g, depth=depth, is_exact=True)
    vertices = list(g.vertices)
    edges = list(g.edges)
    for w in snks:
        for n in range(1, depth + 1):
            vertices.append(indexed_vertex(w, n))
            src = w if n == 1 else indexed_vertex(w, n - 1)
            edges.append(Edge(chain_edge(w, n), src, indexed_vertex(w, n)))
    out = DirectedGraph(
        vertices=frozenset(vertices),
        edges=tuple(edges),
        infinite_bundles=g.infinite_bundles,
    )
    problems = validate(out)
    if problems:
        raise MoveError("add_tails produced an invalid graph: " + "; ".join(problems))
    return TruncatedMove(graph=out, depth=depth, is_exact=False)
