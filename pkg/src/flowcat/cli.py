"""Command-line front end: graph/spec file formats, subcommands, DOT output.

Exit codes: 0 success, 1 a verification or validation check failed, 2 usage or
parse errors, 3 a search exceeded its node budget (FLOWCAT_MAX_NODES).
"""

from __future__ import annotations

import argparse
import json
import sys

from .casework import (
    CaseworkError,
    cuntz_splice_report,
    desingularisation_counterexample,
    verify_acyclic_corollary,
    verify_poset_corollary,
)
from .categories import CategoryError, MatCategory, Morphism, PosetCategory, parse_category_spec
from .diagrams import DiagramError, enumerate_diagrams, make_diagram
from .functors import FunctorPairError, make_pair, verify_equivalence
from .graphs import (
    DirectedGraph,
    Edge,
    GraphError,
    cohereditary_irreducible_subsets,
    is_irreducible,
    is_nontrivial,
    validate,
)
from .invariants import bowen_franks, franks_equivalent, parry_sullivan
from .leavitt import (
    LeavittError,
    build_module_operators,
    check_leavitt_relations,
    check_unital_action,
)
from .moves import (
    InDelaySpec,
    InSplitSpec,
    MoveError,
    OutDelaySpec,
    OutSplitSpec,
    add_heads_truncated,
    add_tails_truncated,
    in_delay,
    in_split,
    out_delay,
    out_split,
    remove_sink,
)
from .util import SearchCapExceeded

OK, CHECK_FAILED, USAGE, CAPPED = 0, 1, 2, 3


class CliError(Exception):
    def __init__(self, message, code=USAGE):
        super().__init__(message)
        self.code = code


# -- file formats ---------------------------------------------------------------


def _load_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise CliError(f"{path}: {exc.strerror or exc}") from exc
    except json.JSONDecodeError as exc:
        raise CliError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc


def _require(cond, where, message):
    if not cond:
        raise CliError(f"{where}: {message}")


def graph_from_doc(doc, where, check=True):
    _require(isinstance(doc, dict), where, "graph file must be a JSON object")
    vertices = doc.get("vertices")
    _require(isinstance(vertices, list), where, '"vertices" must be a list')
    _require(
        all(isinstance(v, str) for v in vertices),
        where,
        "vertex names must be strings",
    )
    edges = []
    for i, entry in enumerate(doc.get("edges", [])):
        _require(
            isinstance(entry, dict) and {"id", "src", "tgt"} <= set(entry),
            where,
            f'edge #{i} must be an object with "id", "src", "tgt"',
        )
        edges.append(Edge(entry["id"], entry["src"], entry["tgt"]))
    bundles = []
    for i, entry in enumerate(doc.get("infinite_bundles", [])):
        _require(
            isinstance(entry, dict) and {"src", "tgt"} <= set(entry),
            where,
            f'infinite bundle #{i} must be an object with "src", "tgt"',
        )
        bundles.append((entry["src"], entry["tgt"]))
    g = DirectedGraph(
        vertices=frozenset(vertices),
        edges=tuple(edges),
        infinite_bundles=frozenset(bundles),
    )
    if check:
        problems = validate(g)
        if problems:
            raise CliError(f"{where}: invalid graph: " + "; ".join(problems))
    return g


def load_graph(path, check=True):
    return graph_from_doc(_load_json(path), path, check=check)


def graph_to_doc(g):
    return {
        "vertices": g.sorted_vertices(),
        "edges": [
            {"id": e.id, "src": e.src, "tgt": e.tgt}
            for e in sorted(g.edges, key=lambda e: e.id)
        ],
        "infinite_bundles": [
            {"src": a, "tgt": b} for a, b in sorted(g.infinite_bundles)
        ],
    }


def _emit(doc, out=None):
    text = json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _split_graph_map(g, mapping, where):
    """Split a map keyed by vertex names and edge ids into the two parts."""
    _require(isinstance(mapping, dict), where, "the move map must be an object")
    edge_ids = {e.id for e in g.edges}
    on_vertices, on_edges = {}, {}
    for key, value in mapping.items():
        _require(
            isinstance(value, int) and value >= 0,
            where,
            f"value for {key!r} must be a nonnegative integer",
        )
        is_vertex, is_edge = key in g.vertices, key in edge_ids
        if is_vertex and is_edge:
            raise CliError(
                f"{where}: key {key!r} names both a vertex and an edge of the graph"
            )
        if is_vertex:
            on_vertices[key] = value
        elif is_edge:
            on_edges[key] = value
        else:
            raise CliError(f"{where}: key {key!r} matches no vertex or edge")
    return on_vertices, on_edges


def parse_move_doc(doc, g, where):
    """Returns (move name, payload): the sink vertex for remove_sink, the
    depth for truncations, and the spec dataclass for delays and splits."""
    _require(isinstance(doc, dict), where, "move file must be a JSON object")
    move = doc.get("move")
    known = (
        "remove_sink",
        "out_delay",
        "in_delay",
        "out_split",
        "in_split",
        "add_heads",
        "add_tails",
    )
    _require(move in known, where, f'"move" must be one of {", ".join(known)}')
    if move == "remove_sink":
        vertex = doc.get("vertex")
        _require(isinstance(vertex, str), where, '"vertex" must name the sink')
        return move, vertex
    if move in ("add_heads", "add_tails"):
        depth = doc.get("depth")
        _require(
            isinstance(depth, int) and depth >= 1,
            where,
            '"depth" must be a positive integer',
        )
        return move, depth
    key = "d" if move.endswith("delay") else "p"
    _require(key in doc, where, f'"{key}" map is required for {move}')
    on_vertices, on_edges = _split_graph_map(g, doc[key], where)
    if move == "out_delay":
        return move, OutDelaySpec(d_vertices=on_vertices, d_edges=on_edges)
    if move == "in_delay":
        _require(
            not on_vertices,
            where,
            "in_delay takes delays on edges only; vertex delays are derived",
        )
        return move, InDelaySpec(d_edges=on_edges)
    if move == "out_split":
        return move, OutSplitSpec(p_vertices=on_vertices, p_edges=on_edges)
    return move, InSplitSpec(p_vertices=on_vertices, p_edges=on_edges)


def _apply_move(g, move, payload):
    if move == "remove_sink":
        return remove_sink(g, payload), None
    if move == "add_heads":
        result = add_heads_truncated(g, payload)
        return result.graph, result
    if move == "add_tails":
        result = add_tails_truncated(g, payload)
        return result.graph, result
    fn = {
        "out_delay": out_delay,
        "in_delay": in_delay,
        "out_split": out_split,
        "in_split": in_split,
    }[move]
    return fn(g, payload), None


def _load_poset_file(path):
    doc = _load_json(path)
    _require(isinstance(doc, dict), path, "poset file must be a JSON object")
    elements = doc.get("elements")
    _require(isinstance(elements, list), path, '"elements" must be a list')
    le = doc.get("le", [])
    _require(
        isinstance(le, list)
        and all(isinstance(p, list) and len(p) == 2 for p in le),
        path,
        '"le" must be a list of [lower, upper] pairs',
    )
    name = doc.get("name", path)
    return PosetCategory(elements, [tuple(p) for p in le], name=name)


def load_category(spec):
    try:
        return parse_category_spec(spec, poset_loader=_load_poset_file)
    except CategoryError as exc:
        raise CliError(f"bad category spec {spec!r}: {exc}") from exc


def render_dot(g):
    def q(s):
        return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"') + '"'

    lines = ["digraph G {"]
    for v in g.sorted_vertices():
        lines.append(f"  {q(v)};")
    for e in sorted(g.edges, key=lambda e: e.id):
        lines.append(f"  {q(e.src)} -> {q(e.tgt)} [label={q(e.id)}];")
    for a, b in sorted(g.infinite_bundles):
        lines.append(f'  {q(a)} -> {q(b)} [label="∞", style=bold];')
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- subcommands ------------------------------------------------------------------


def cmd_validate(args):
    g = load_graph(args.graph, check=False)
    problems = validate(g)
    if problems:
        for p in problems:
            print(p)
        return CHECK_FAILED
    print("ok")
    return OK


def cmd_invariants(args):
    g = load_graph(args.graph)
    try:
        bf = bowen_franks(g)
        doc = {
            "ps": parry_sullivan(g),
            "bf": {"free_rank": bf.free_rank, "torsion": list(bf.torsion)},
            "irreducible": is_irreducible(g),
            "nontrivial": is_nontrivial(g),
            "cohereditary_irreducible_count": len(
                cohereditary_irreducible_subsets(g)
            ),
        }
    except GraphError as exc:
        raise CliError(str(exc)) from exc
    _emit(doc)
    return OK


def cmd_move(args):
    g = load_graph(args.graph)
    move, payload = parse_move_doc(_load_json(args.spec), g, args.spec)
    try:
        moved, truncation = _apply_move(g, move, payload)
    except (MoveError, GraphError) as exc:
        raise CliError(str(exc)) from exc
    if truncation is not None and not truncation.is_exact:
        print(
            f"note: {move} at depth {truncation.depth} is a finite "
            "approximation of an infinite attachment",
            file=sys.stderr,
        )
    _emit(graph_to_doc(moved), args.output)
    return OK


def cmd_franks(args):
    g = load_graph(args.graph)
    h = load_graph(args.other)
    try:
        verdict = franks_equivalent(g, h)
    except GraphError as exc:
        raise CliError(str(exc)) from exc
    _emit({"verdict": verdict.kind, "reason": verdict.reason})
    return OK


def cmd_diagrams(args):
    g = load_graph(args.graph)
    cat = load_category(args.category)
    try:
        found = list(enumerate_diagrams(cat, g, bound=args.bound))
    except DiagramError as exc:
        raise CliError(str(exc)) from exc
    doc = {"count": len(found)}
    if args.list:
        doc["diagrams"] = [
            {
                "objects": {v: d.obj[v] for v in g.sorted_vertices()},
                "maps": {
                    e.id: d.mor[e.id].data
                    for e in sorted(g.edges, key=lambda e: e.id)
                },
            }
            for d in found
        ]
    _emit(doc)
    return OK


def cmd_verify(args):
    g = load_graph(args.graph)
    move, payload = parse_move_doc(_load_json(args.spec), g, args.spec)
    cat = load_category(args.category)
    try:
        pair = make_pair(move, g, payload)
    except FunctorPairError as exc:
        raise CliError(str(exc)) from exc
    report = verify_equivalence(cat, pair, samples=args.samples, seed=args.seed)
    _emit(report.to_dict())
    return OK if report.verdict == "pass" else CHECK_FAILED


def cmd_lpa_check(args):
    g = load_graph(args.graph)
    doc = _load_json(args.diagram)
    where = args.diagram
    _require(isinstance(doc, dict), where, "diagram file must be a JSON object")
    dims = doc.get("dims")
    _require(
        isinstance(dims, dict)
        and all(isinstance(n, int) and n >= 0 for n in dims.values()),
        where,
        '"dims" must map vertices to nonnegative integers',
    )
    maps = doc.get("maps", {})
    _require(isinstance(maps, dict), where, '"maps" must map edge ids to matrices')
    q = args.field
    bound = 0
    for v in g.sorted_vertices():
        _require(v in dims, where, f'"dims" is missing vertex {v!r}')
        incoming_sum = sum(dims.get(e.src, 0) for e in g.incoming(v))
        bound = max(bound, dims[v], incoming_sum)
    try:
        cat = MatCategory(q, bound)
    except CategoryError as exc:
        raise CliError(str(exc)) from exc
    mor = {}
    for e in sorted(g.edges, key=lambda e: e.id):
        _require(e.id in maps, where, f'"maps" is missing edge {e.id!r}')
        rows = maps[e.id]
        _require(
            isinstance(rows, list)
            and all(
                isinstance(r, list) and all(isinstance(x, int) for x in r)
                for r in rows
            ),
            where,
            f"matrix for edge {e.id!r} must be a list of integer rows",
        )
        data = tuple(tuple(x % q for x in r) for r in rows)
        mor[e.id] = Morphism(dims[e.src], dims[e.tgt], data)
    try:
        d = make_diagram(cat, g, dims, mor)
    except DiagramError as exc:
        raise CliError(f"{where}: {exc}") from exc
    try:
        ops = build_module_operators(cat, d)
    except LeavittError as exc:
        _emit({"ok": False, "error": str(exc)})
        return CHECK_FAILED
    report = check_leavitt_relations(ops)
    unital = check_unital_action(ops)
    out = report.to_dict()
    out["checks"].append(
        {
            "name": unital.name,
            "description": unital.description,
            "ok": unital.ok,
            "failures": list(unital.failures),
        }
    )
    out["ok"] = report.ok and unital.ok
    out["total_dim"] = ops.total_dim
    _emit(out)
    return OK if out["ok"] else CHECK_FAILED


def cmd_report(args):
    cat = load_category(args.category) if args.category else None
    try:
        if args.case == "acyclic":
            _require(args.graph, "report acyclic", "a graph file is required")
            report = verify_acyclic_corollary(
                cat or load_category("poset:chain2"), load_graph(args.graph)
            )
        elif args.case == "poset":
            _require(args.graph, "report poset", "a graph file is required")
            report = verify_poset_corollary(
                cat or load_category("poset:chain2"), load_graph(args.graph)
            )
        elif args.case == "desing":
            report = desingularisation_counterexample(cat or load_category("poset:chain2"))
        else:
            report = cuntz_splice_report(cat)
    except CaseworkError as exc:
        raise CliError(str(exc)) from exc
    if args.json:
        _emit(report.to_dict())
    else:
        print(report.render())
    acceptable = report.ok or report.verdict.startswith(("open question", "inconclusive"))
    return OK if acceptable else CHECK_FAILED


def cmd_render(args):
    g = load_graph(args.graph)
    sys.stdout.write(render_dot(g))
    return OK


# -- parser ------------------------------------------------------------------------


def build_parser():
    parser = argparse.ArgumentParser(
        prog="flowcat",
        description="Graph moves, flow-equivalence invariants, and diagram "
        "categories over finite posets, sets, and matrices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a graph file")
    p.add_argument("graph")
    p.set_defaults(fn=cmd_validate)

    p = sub.add_parser("invariants", help="Parry-Sullivan and Bowen-Franks data")
    p.add_argument("graph")
    p.set_defaults(fn=cmd_invariants)

    p = sub.add_parser("move", help="apply a graph move from a spec file")
    p.add_argument("graph")
    p.add_argument("spec")
    p.add_argument("-o", "--output", help="write the moved graph here")
    p.set_defaults(fn=cmd_move)

    p = sub.add_parser("franks", help="compare two graphs under the classification")
    p.add_argument("graph")
    p.add_argument("other")
    p.set_defaults(fn=cmd_franks)

    p = sub.add_parser("diagrams", help="enumerate coproduct-condition diagrams")
    p.add_argument("graph")
    p.add_argument("--category", required=True)
    p.add_argument("--bound", type=int, default=None)
    p.add_argument("--list", action="store_true", help="include the diagrams")
    p.set_defaults(fn=cmd_diagrams)

    p = sub.add_parser("verify", help="run the equivalence harness for a move")
    p.add_argument("graph")
    p.add_argument("spec")
    p.add_argument("--category", required=True)
    p.add_argument("--samples", type=int, default=8)
    p.add_argument("--seed", type=int, default=20260815)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("lpa-check", help="check the module relations for a diagram")
    p.add_argument("graph")
    p.add_argument("--field", type=int, required=True, help="prime modulus q")
    p.add_argument("--diagram", required=True, help="dims + maps JSON file")
    p.set_defaults(fn=cmd_lpa_check)

    p = sub.add_parser("report", help="run a scripted case report")
    p.add_argument("case", choices=["acyclic", "poset", "desing", "cuntz"])
    p.add_argument("graph", nargs="?", help="graph file (acyclic/poset cases)")
    p.add_argument("--category", default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_report)

    p = sub.add_parser("render", help="emit DOT text for a graph")
    p.add_argument("graph")
    p.add_argument("--dot", action="store_true", help="DOT output (the default)")
    p.set_defaults(fn=cmd_render)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else USAGE
    try:
        return args.fn(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except SearchCapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return CAPPED


if __name__ == "__main__":
    sys.exit(main())
