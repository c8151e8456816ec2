import random

import pytest
from hypothesis import given, settings

from flowcat import zoo
from flowcat.graphs import (
    GraphError,
    graph,
    is_irreducible,
    validate,
)
from flowcat.moves import (
    InDelaySpec,
    InSplitSpec,
    MoveError,
    OutDelaySpec,
    OutSplitSpec,
    add_heads_truncated,
    add_tails_truncated,
    in_delay,
    in_delay_vertex_delays,
    in_split,
    out_delay,
    out_split,
    remove_sink,
)
from flowcat.sampling import random_irreducible_graph, random_move_spec
from flowcat import moves as mv

from strategies import small_graphs


def edge_triples(g):
    return set(g.edge_set())


# -- sink removal ---------------------------------------------------------------


def test_remove_sink_acyclic2():
    out = remove_sink(zoo.acyclic2(), "c")
    assert out.vertices == {"a", "b"}
    assert out.edges == ()


def test_remove_sink_keeps_other_edges():
    out = remove_sink(zoo.chain_graph(3), "a3")
    assert out.vertices == {"a1", "a2"}
    assert edge_triples(out) == {("c1", "a1", "a2")}


def test_remove_sink_errors():
    with pytest.raises(MoveError, match="not a sink"):
        remove_sink(zoo.vw_graph(), "w")
    with pytest.raises(MoveError, match="also a source"):
        remove_sink(zoo.single_vertex(), "u")
    with pytest.raises(GraphError):
        remove_sink(zoo.vw_graph(), "zz")


def test_remove_sink_drops_incoming_bundles():
    g = graph(["a", "b"], [("e", "a", "a")], [("a", "b")])
    out = remove_sink(g, "b")
    assert out.vertices == {"a"}
    assert out.infinite_bundles == frozenset()


# -- out-delay ------------------------------------------------------------------


def test_out_delay_vw_example():
    out = out_delay(zoo.vw_graph(), zoo.vw_out_delay_spec())
    assert out.vertices == {"(v,0)", "(v,1)", "(w,0)"}
    assert edge_triples(out) == {
        ("e", "(v,1)", "(w,0)"),
        ("f", "(w,0)", "(v,0)"),
        ("g", "(w,0)", "(w,0)"),
        ("e_{v,1}", "(v,0)", "(v,1)"),
    }


def test_out_delay_zero_spec_is_renaming():
    g = zoo.vw_graph()
    spec = OutDelaySpec(
        d_vertices={v: 0 for v in g.vertices}, d_edges={e.id: 0 for e in g.edges}
    )
    out = out_delay(g, spec)
    assert out.vertices == {"(v,0)", "(w,0)"}
    assert edge_triples(out) == {
        ("e", "(v,0)", "(w,0)"),
        ("f", "(w,0)", "(v,0)"),
        ("g", "(w,0)", "(w,0)"),
    }


def test_out_delay_rejects_edge_delay_above_vertex_delay():
    g = zoo.vw_graph()
    spec = OutDelaySpec(
        d_vertices={"v": 0, "w": 0}, d_edges={"e": 1, "f": 0, "g": 0}
    )
    with pytest.raises(MoveError, match="exceeds"):
        out_delay(g, spec)


def test_out_delay_rejects_missing_values():
    g = zoo.vw_graph()
    with pytest.raises(MoveError, match="missing value"):
        out_delay(g, OutDelaySpec(d_vertices={"v": 0}, d_edges={}))


def test_out_delay_rejects_bundles():
    g = zoo.h_graph()
    spec = OutDelaySpec(d_vertices={"lo": 0, "hi": 0}, d_edges={})
    with pytest.raises(MoveError, match="bundle"):
        out_delay(g, spec)


# -- in-delay -------------------------------------------------------------------


def test_in_delay_vw_reproduces_standard_picture():
    out = in_delay(zoo.vw_graph(), zoo.vw_in_delay_spec())
    assert out.vertices == {"(v,0)", "(w,0)", "(w,1)", "(w,2)"}
    assert edge_triples(out) == {
        ("e", "(v,0)", "(w,1)"),
        ("f", "(w,0)", "(v,0)"),
        ("g", "(w,0)", "(w,2)"),
        ("e_{w,1}", "(w,1)", "(w,0)"),
        ("e_{w,2}", "(w,2)", "(w,1)"),
    }


def test_in_delay_vertex_delays_are_derived():
    g = zoo.vw_graph()
    spec = zoo.vw_in_delay_spec()
    assert in_delay_vertex_delays(g, spec) == {"v": 0, "w": 2}


def test_in_delay_zero_spec_is_renaming():
    g = zoo.loop2()
    out = in_delay(g, InDelaySpec(d_edges={"l1": 0, "l2": 0}))
    assert out.vertices == {"(u,0)"}
    assert edge_triples(out) == {("l1", "(u,0)", "(u,0)"), ("l2", "(u,0)", "(u,0)")}


def test_in_delay_rejects_infinite_receivers():
    with pytest.raises(MoveError, match="infinite receiver"):
        in_delay(zoo.h_graph(), InDelaySpec(d_edges={}))


# -- out-split ------------------------------------------------------------------


def test_out_split_vw_reproduces_standard_picture():
    out = out_split(zoo.vw_graph(), zoo.vw_out_split_spec())
    assert out.vertices == {"(v,0)", "(w,0)", "(w,1)"}
    assert edge_triples(out) == {
        ("(e,0)", "(v,0)", "(w,0)"),
        ("(e,1)", "(v,0)", "(w,1)"),
        ("(f,0)", "(w,1)", "(v,0)"),
        ("(g,0)", "(w,0)", "(w,0)"),
        ("(g,1)", "(w,0)", "(w,1)"),
    }


def test_out_split_loop2():
    out = out_split(zoo.loop2(), zoo.loop2_out_split_spec())
    assert len(out.vertices) == 2
    assert len(out.edges) == 4
    from flowcat.graphs import adjacency_matrix

    assert adjacency_matrix(out).entries == ((1, 1), (1, 1))


def test_out_split_zero_spec_is_renaming():
    g = zoo.vw_graph()
    spec = OutSplitSpec(
        p_vertices={v: 0 for v in g.vertices}, p_edges={e.id: 0 for e in g.edges}
    )
    out = out_split(g, spec)
    assert out.vertices == {"(v,0)", "(w,0)"}
    assert len(out.edges) == 3


def test_out_split_rejects_nonzero_at_source():
    g = zoo.acyclic2()
    spec = OutSplitSpec(
        p_vertices={"a": 1, "b": 0, "c": 0},
        p_edges={"e1": 0, "e2": 0},
    )
    with pytest.raises(MoveError, match="source"):
        out_split(g, spec)


# -- in-split -------------------------------------------------------------------


def test_in_split_vw_reproduces_standard_picture():
    out = in_split(zoo.vw_graph(), zoo.vw_in_split_spec())
    assert out.vertices == {"(v,0)", "(w,0)", "(w,1)"}
    assert edge_triples(out) == {
        ("(e,0)", "(v,0)", "(w,1)"),
        ("(f,0)", "(w,0)", "(v,0)"),
        ("(f,1)", "(w,1)", "(v,0)"),
        ("(g,0)", "(w,0)", "(w,0)"),
        ("(g,1)", "(w,1)", "(w,0)"),
    }


def test_in_split_zero_spec_is_renaming():
    g = zoo.vw_graph()
    spec = InSplitSpec(
        p_vertices={v: 0 for v in g.vertices}, p_edges={e.id: 0 for e in g.edges}
    )
    out = in_split(g, spec)
    assert out.vertices == {"(v,0)", "(w,0)"}
    assert len(out.edges) == 3


def test_in_split_rejects_non_surjective_values():
    g = zoo.vw_graph()
    spec = InSplitSpec(p_vertices={"v": 0, "w": 1}, p_edges={"e": 1, "f": 0, "g": 1})
    with pytest.raises(MoveError, match="surjective"):
        in_split(g, spec)


def test_in_split_rejects_infinite_receivers():
    spec = InSplitSpec(p_vertices={"lo": 0, "hi": 0}, p_edges={})
    with pytest.raises(MoveError, match="infinite receiver"):
        in_split(zoo.h_graph(), spec)


# -- truncated heads and tails ----------------------------------------------------


def test_add_heads_no_sources_is_exact_identity():
    g = zoo.loop2()
    res = add_heads_truncated(g, 3)
    assert res.is_exact and not res.is_approximation
    assert res.graph is g


def test_add_heads_depth2():
    g = graph(["v", "w"], [("e", "v", "w"), ("l", "w", "w")])
    res = add_heads_truncated(g, 2)
    assert res.is_approximation
    out = res.graph
    assert out.vertices == {"v", "w", "(v,1)", "(v,2)"}
    assert ("e_{v,1}", "(v,1)", "v") in out.edge_set()
    assert ("e_{v,2}", "(v,2)", "(v,1)") in out.edge_set()


def test_add_tails_depth1():
    g = graph(["s", "r"], [("e", "r", "s"), ("l", "r", "r")])
    res = add_tails_truncated(g, 1)
    out = res.graph
    assert out.vertices == {"s", "r", "(s,1)"}
    assert ("e_{s,1}", "s", "(s,1)") in out.edge_set()
    assert res.is_approximation


def test_truncations_reject_bad_depth():
    with pytest.raises(MoveError):
        add_heads_truncated(zoo.acyclic2(), 0)


# -- closed-form counts and structural properties ---------------------------------


MOVE_FNS = {
    "out_delay": mv.out_delay,
    "in_delay": mv.in_delay,
    "out_split": mv.out_split,
    "in_split": mv.in_split,
}


def test_closed_form_counts_200_random_pairs():
    rng = random.Random(99)
    for trial in range(200):
        g = random_irreducible_graph(rng, max_vertices=8)
        move = rng.choice(sorted(MOVE_FNS))
        spec = random_move_spec(rng, g, move)
        out = MOVE_FNS[move](g, spec)
        assert validate(out) == []
        if move == "out_delay":
            assert len(out.vertices) == sum(
                spec.d_vertices[v] + 1 for v in g.vertices
            )
            assert len(out.edges) == len(g.edges) + sum(
                spec.d_vertices[v] for v in g.vertices
            )
        elif move == "in_delay":
            dv = in_delay_vertex_delays(g, spec)
            assert len(out.vertices) == sum(dv[v] + 1 for v in g.vertices)
        elif move == "out_split":
            assert len(out.edges) == sum(
                spec.p_vertices[e.tgt] + 1 for e in g.edges
            )
            assert len(out.vertices) == sum(
                spec.p_vertices[v] + 1 for v in g.vertices
            )
        elif move == "in_split":
            assert len(out.edges) == sum(
                spec.p_vertices[e.src] + 1 for e in g.edges
            )


def test_moves_preserve_irreducibility_when_every_vertex_on_cycle():
    rng = random.Random(4242)
    for trial in range(40):
        g = random_irreducible_graph(rng, max_vertices=6)
        assert is_irreducible(g)
        for move, fn in MOVE_FNS.items():
            spec = random_move_spec(rng, g, move)
            assert is_irreducible(fn(g, spec)), (move, trial)


@given(small_graphs(max_vertices=5, max_edges=6))
@settings(max_examples=40)
def test_zero_delay_spec_always_valid_and_renames(g):
    spec = OutDelaySpec(
        d_vertices={v: 0 for v in g.vertices}, d_edges={e.id: 0 for e in g.edges}
    )
    out = out_delay(g, spec)
    assert len(out.vertices) == len(g.vertices)
    assert len(out.edges) == len(g.edges)
