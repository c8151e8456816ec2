"""Diagrams of graph shape in a finite category, and the coproduct condition.

A diagram assigns an object to each vertex and a morphism to each edge.  It
satisfies the coproduct condition when, at every non-source vertex, the
cotuple of the incoming morphisms is an isomorphism from the coproduct of the
incoming sources.  In thin (poset) instances this reduces to: every vertex
object is the supremum of its incoming source objects, where an infinite
bundle contributes its source once.

Non-thin instances reject graphs with infinite bundles: their coproduct
condition would need an infinite coproduct.

Enumeration exploits a normal form: a coproduct-condition diagram is exactly a
feasible size vector together with one isomorphism choice per non-source
vertex (the cotuple value), so edge morphisms are `iso . injection`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .categories import FiniteCategory, Morphism
from .graphs import DirectedGraph, classify_vertex
from .util import NodeBudget, frozendict, max_nodes_cap


class DiagramError(ValueError):
    """Ill-typed diagram data or unsupported graph/category combination."""


@dataclass(frozen=True)
class Diagram:
    graph: DirectedGraph
    obj: frozendict
    mor: frozendict

    def object_at(self, v):
        return self.obj[v]

    def morphism_at(self, edge_id):
        return self.mor[edge_id]


@dataclass(frozen=True)
class DiagramMorphism:
    source: Diagram
    target: Diagram
    components: frozendict


@dataclass(frozen=True)
class VertexCheck:
    ok: bool
    reason: str = ""


@dataclass(frozen=True)
class CoproductReport:
    by_vertex: frozendict

    @property
    def ok(self):
        return all(check.ok for check in self.by_vertex.values())

    @property
    def failures(self):
        return sorted(
            (v, check.reason) for v, check in self.by_vertex.items() if not check.ok
        )


def _require_bundle_free(cat, g):
    if not cat.is_thin and g.infinite_bundles:
        raise DiagramError(
            "infinite bundles are only supported in poset instances"
        )


def make_diagram(cat, g, obj, mor=None):
    """Validate and freeze a diagram.  Thin instances derive `mor` from the
    order relation; other instances require a morphism for every edge."""
    _require_bundle_free(cat, g)
    obj = dict(obj)
    missing = sorted(v for v in g.vertices if v not in obj)
    extra = sorted(v for v in obj if v not in g.vertices)
    if missing or extra:
        raise DiagramError(
            f"object assignment mismatch: missing {missing}, unknown {extra}"
        )
    known = set(cat.objects())
    for v in g.sorted_vertices():
        if obj[v] not in known:
            raise DiagramError(f"object {obj[v]!r} at vertex {v!r} is not in the category")
    if cat.is_thin:
        filled = {}
        for e in g.edges:
            if not cat.leq(obj[e.src], obj[e.tgt]):
                raise DiagramError(
                    f"no morphism {obj[e.src]!r} -> {obj[e.tgt]!r} for edge {e.id!r}"
                )
            filled[e.id] = Morphism(obj[e.src], obj[e.tgt])
        for src, tgt in g.infinite_bundles:
            if not cat.leq(obj[src], obj[tgt]):
                raise DiagramError(
                    f"no morphism {obj[src]!r} -> {obj[tgt]!r} for bundle ({src!r}, {tgt!r})"
                )
        return Diagram(g, frozendict(obj), frozendict(filled))
    if mor is None:
        raise DiagramError("edge morphisms are required outside poset instances")
    mor = dict(mor)
    problems = []
    for e in g.edges:
        f = mor.get(e.id)
        if f is None:
            problems.append(f"edge {e.id!r} has no morphism")
        elif f.dom != obj[e.src] or f.cod != obj[e.tgt]:
            problems.append(
                f"edge {e.id!r} morphism has type {f.dom!r} -> {f.cod!r}, "
                f"expected {obj[e.src]!r} -> {obj[e.tgt]!r}"
            )
    edge_ids = {e.id for e in g.edges}
    problems.extend(f"unknown edge {k!r}" for k in sorted(mor) if k not in edge_ids)
    if problems:
        raise DiagramError("; ".join(problems))
    return Diagram(g, frozendict(obj), frozendict(mor))


def incoming_family(g, v):
    """Incoming edges in canonical (edge-id sorted) order; used everywhere a
    coproduct over t^{-1}(v) is formed, so nested coproducts line up."""
    return g.incoming(v)


def cotuple_at(cat, diagram, v):
    """The canonical coproduct over incoming sources at `v` and the cotuple of
    the incoming morphisms into `obj[v]`.  Returns (coproduct, cotuple); the
    coproduct may be None when the instance cannot form it."""
    g = diagram.graph
    edges = incoming_family(g, v)
    family = [diagram.obj[e.src] for e in edges]
    cop = cat.coproduct(family)
    if cop is None:
        return None, None
    legs = [diagram.mor[e.id] for e in edges]
    return cop, cat.cotuple(cop, legs)


def check_coproduct_condition(cat, diagram):
    g = diagram.graph
    checks = {}
    for v in g.sorted_vertices():
        cls = classify_vertex(g, v)
        if cls.is_source:
            continue
        if cat.is_thin:
            contributors = {diagram.obj[e.src] for e in g.incoming(v)}
            contributors |= {diagram.obj[src] for src, _ in g.incoming_bundles(v)}
            family = sorted(contributors, key=repr)
            sup = cat.supremum(family)
            if sup is None:
                checks[v] = VertexCheck(False, "incoming family has no supremum")
            elif sup != diagram.obj[v]:
                checks[v] = VertexCheck(
                    False,
                    f"vertex object {diagram.obj[v]!r} is not the supremum "
                    f"{sup!r} of its incoming family",
                )
            else:
                checks[v] = VertexCheck(True)
            continue
        cop, psi = cotuple_at(cat, diagram, v)
        if cop is None:
            checks[v] = VertexCheck(
                False, "coproduct of the incoming family is unavailable at this bound"
            )
        elif not cat.is_iso(psi):
            checks[v] = VertexCheck(
                False, "cotuple of the incoming morphisms is not an isomorphism"
            )
        else:
            checks[v] = VertexCheck(True)
    return CoproductReport(frozendict(checks))


def solve_dimension_vectors(g, bound):
    """All assignments v -> size in 0..bound with, at every non-source vertex,
    size(v) = sum of size(src) over incoming edges.  Deterministic order."""
    if g.infinite_bundles:
        raise DiagramError("size vectors are undefined for graphs with bundles")
    vertices = g.sorted_vertices()
    non_sources = [v for v in vertices if not classify_vertex(g, v).is_source]
    solutions = []
    for values in itertools.product(range(bound + 1), repeat=len(vertices)):
        dims = dict(zip(vertices, values))
        if all(
            sum(dims[e.src] for e in g.incoming(v)) == dims[v] for v in non_sources
        ):
            solutions.append(dims)
    return solutions


def _iso_pool(cat, cache, n, budget):
    if n not in cache:
        pool = []
        for f in cat.isomorphisms(n, n):
            budget.spend()
            pool.append(f)
        cache[n] = pool
    return cache[n]


def _assemble(cat, g, dims, iso_by_vertex):
    """Edge morphisms from the normal form: mor[e] = iso_at_target . injection."""
    mor = {}
    for v, iso in iso_by_vertex.items():
        edges = incoming_family(g, v)
        cop = cat.coproduct([dims[e.src] for e in edges])
        if cop is None:
            raise DiagramError(
                f"coproduct of the incoming family at {v!r} is unavailable at this bound"
            )
        if cop.apex != dims[v]:
            raise DiagramError(f"size vector is infeasible at vertex {v!r}")
        for inj, e in zip(cop.injections, edges):
            mor[e.id] = cat.compose(iso, inj)
    return make_diagram(cat, g, dims, mor)


def enumerate_diagrams(cat, g, bound=None, max_nodes=None):
    """All diagrams of shape `g` satisfying the coproduct condition, in a
    deterministic order.  Raises SearchCapExceeded past the node budget."""
    budget = NodeBudget(max_nodes_cap(max_nodes))
    if cat.is_thin:
        vertices = g.sorted_vertices()
        found = []
        for values in itertools.product(cat.objects(), repeat=len(vertices)):
            budget.spend()
            obj = dict(zip(vertices, values))
            diagram = _try_thin_diagram(cat, g, obj)
            if diagram is not None:
                found.append(diagram)
        return found
    _require_bundle_free(cat, g)
    if bound is None:
        bound = max(cat.objects())
    non_sources = [
        v for v in g.sorted_vertices() if not classify_vertex(g, v).is_source
    ]
    cache = {}
    found = []
    for dims in solve_dimension_vectors(g, bound):
        pools = [_iso_pool(cat, cache, dims[v], budget) for v in non_sources]
        for choice in itertools.product(*pools):
            budget.spend()
            found.append(_assemble(cat, g, dims, dict(zip(non_sources, choice))))
    return found


def _try_thin_diagram(cat, g, obj):
    try:
        diagram = make_diagram(cat, g, obj)
    except DiagramError:
        return None
    if check_coproduct_condition(cat, diagram).ok:
        return diagram
    return None


def canonical_diagram(cat, g, dims):
    """The diagram for a feasible size vector with every cotuple the identity
    (edge morphisms are the canonical injections)."""
    if cat.is_thin:
        diagram = _try_thin_diagram(cat, g, dims)
        if diagram is None:
            raise DiagramError("assignment does not satisfy the coproduct condition")
        return diagram
    non_sources = [
        v for v in g.sorted_vertices() if not classify_vertex(g, v).is_source
    ]
    isos = {v: cat.identity(dims[v]) for v in non_sources}
    return _assemble(cat, g, dims, isos)


def random_diagram(cat, g, dims, rng):
    """A coproduct-condition diagram for a feasible size vector with uniformly
    random cotuple isomorphisms."""
    if cat.is_thin:
        return canonical_diagram(cat, g, dims)
    non_sources = [
        v for v in g.sorted_vertices() if not classify_vertex(g, v).is_source
    ]
    isos = {v: cat.random_isomorphism(dims[v], rng) for v in non_sources}
    return _assemble(cat, g, dims, isos)


def _same_shape(d1, d2):
    g1, g2 = d1.graph, d2.graph
    return (
        g1.vertices == g2.vertices
        and g1.edge_set() == g2.edge_set()
        and g1.infinite_bundles == g2.infinite_bundles
    )


def identity_diagram_morphism(cat, d):
    components = {v: cat.identity(d.obj[v]) for v in d.graph.vertices}
    return DiagramMorphism(d, d, frozendict(components))


def compose_diagram_morphisms(cat, second, first):
    """Componentwise composite first ; second (second after first)."""
    if first.target != second.source:
        raise DiagramError("diagram morphisms are not composable")
    components = {
        v: cat.compose(second.components[v], first.components[v])
        for v in first.source.graph.vertices
    }
    return DiagramMorphism(first.source, second.target, frozendict(components))


def check_diagram_morphism(cat, src, dst, components):
    """Well-typedness plus naturality of a component family; returns a list of
    problem strings (empty means the family is a diagram morphism)."""
    if not _same_shape(src, dst):
        return ["diagrams have different shapes"]
    problems = []
    g = src.graph
    for v in g.sorted_vertices():
        f = components.get(v)
        if f is None:
            problems.append(f"vertex {v!r} has no component")
        elif f.dom != src.obj[v] or f.cod != dst.obj[v]:
            problems.append(
                f"component at {v!r} has type {f.dom!r} -> {f.cod!r}, "
                f"expected {src.obj[v]!r} -> {dst.obj[v]!r}"
            )
    if problems:
        return problems
    for e in g.edges:
        lhs = cat.compose(components[e.tgt], src.mor[e.id])
        rhs = cat.compose(dst.mor[e.id], components[e.src])
        if lhs != rhs:
            problems.append(f"naturality fails at edge {e.id!r}")
    return problems


def enumerate_diagram_morphisms(cat, src, dst, max_nodes=None):
    """All diagram morphisms src -> dst, deterministically ordered.  Poset
    instances have at most one; other instances search the product of
    hom-sets under the node budget."""
    if not _same_shape(src, dst):
        raise DiagramError("diagrams have different shapes")
    g = src.graph
    vertices = g.sorted_vertices()
    if cat.is_thin:
        if all(cat.leq(src.obj[v], dst.obj[v]) for v in vertices):
            components = {v: Morphism(src.obj[v], dst.obj[v]) for v in vertices}
            return [DiagramMorphism(src, dst, frozendict(components))]
        return []
    budget = NodeBudget(max_nodes_cap(max_nodes))
    pools = []
    for v in vertices:
        pool = []
        for f in cat.hom(src.obj[v], dst.obj[v]):
            budget.spend()
            pool.append(f)
        pools.append(pool)
    found = []
    for choice in itertools.product(*pools):
        budget.spend()
        components = dict(zip(vertices, choice))
        if not check_diagram_morphism(cat, src, dst, components):
            found.append(DiagramMorphism(src, dst, frozendict(components)))
    return found


def diagram_isomorphic(cat, d1, d2, max_nodes=None):
    """A diagram isomorphism d1 -> d2 if one exists, else None.  The search
    ranges over vertexwise isomorphisms filtered by naturality."""
    if not _same_shape(d1, d2):
        raise DiagramError("diagrams have different shapes")
    g = d1.graph
    vertices = g.sorted_vertices()
    if cat.is_thin:
        if all(d1.obj[v] == d2.obj[v] for v in vertices):
            components = {v: cat.identity(d1.obj[v]) for v in vertices}
            return DiagramMorphism(d1, d2, frozendict(components))
        return None
    budget = NodeBudget(max_nodes_cap(max_nodes))
    pools = []
    for v in vertices:
        pool = []
        for f in cat.isomorphisms(d1.obj[v], d2.obj[v]):
            budget.spend()
            pool.append(f)
        if not pool:
            return None
        pools.append(pool)
    for choice in itertools.product(*pools):
        budget.spend()
        components = dict(zip(vertices, choice))
        if not check_diagram_morphism(cat, d1, d2, components):
            return DiagramMorphism(d1, d2, frozendict(components))
    return None
