"""Named example graphs and move specs used by tests, reports and scripts."""

from __future__ import annotations

from .graphs import graph
from .moves import InDelaySpec, InSplitSpec, OutDelaySpec, OutSplitSpec


def single_vertex():
    return graph(["u"])


def loop1():
    """One vertex with one loop."""
    return graph(["u"], [("l", "u", "u")])


def loop2():
    """One vertex with two loops (adjacency [[2]])."""
    return graph(["u"], [("l1", "u", "u"), ("l2", "u", "u")])


def loops(n):
    """One vertex with n loops."""
    return graph(["u"], [(f"l{i}", "u", "u") for i in range(1, n + 1)])


def vw_graph():
    """Two vertices v, w with e: v->w, f: w->v, g: w->w (adjacency [[0,1],[1,1]])."""
    return graph(["v", "w"], [("e", "v", "w"), ("f", "w", "v"), ("g", "w", "w")])


def acyclic2():
    """Two sources a, b feeding a common sink c."""
    return graph(["a", "b", "c"], [("e1", "a", "c"), ("e2", "b", "c")])


def cuntz_h():
    """The Cuntz splice of loop2: adjacency [[2,1,0],[1,1,1],[0,1,1]]."""
    return graph(
        ["v1", "v2", "v3"],
        [
            ("a1", "v1", "v1"),
            ("a2", "v1", "v1"),
            ("b", "v1", "v2"),
            ("c", "v2", "v1"),
            ("d", "v2", "v2"),
            ("h", "v2", "v3"),
            ("i", "v3", "v2"),
            ("j", "v3", "v3"),
        ],
    )


def h_graph():
    """Two vertices joined by an infinite bundle lo => hi."""
    return graph(["lo", "hi"], [], [("lo", "hi")])


def edgeless(n):
    return graph([f"v{i}" for i in range(1, n + 1)])


def chain_graph(k):
    """Directed path a1 -> a2 -> ... -> ak."""
    vs = [f"a{i}" for i in range(1, k + 1)]
    es = [(f"c{i}", f"a{i}", f"a{i+1}") for i in range(1, k)]
    return graph(vs, es)


def cycle_with_sink():
    """A 2-cycle a <-> b with an extra edge b -> s into a sink."""
    return graph(
        ["a", "b", "s"], [("x", "a", "b"), ("y", "b", "a"), ("z", "b", "s")]
    )


def loop_and_exit():
    """A loop at u feeding w twice: l: u->u, m, m2: u->w.

    Unlike loop2, this shape admits nonzero size vectors (n, 2n) under the
    coproduct condition, so split and delay moves on it exercise nontrivial
    sets and matrices.
    """
    return graph(
        ["u", "w"], [("l", "u", "u"), ("m", "u", "w"), ("m2", "u", "w")]
    )


# -- move specs reproducing the standard worked pictures -----------------------


def vw_out_delay_spec():
    """Out-delay of vw_graph with d(v)=1, d(e)=1, everything else 0."""
    return OutDelaySpec(d_vertices={"v": 1, "w": 0}, d_edges={"e": 1, "f": 0, "g": 0})


def vw_in_delay_spec():
    """In-delay of vw_graph with d(e)=1, d(f)=0, d(g)=2."""
    return InDelaySpec(d_edges={"e": 1, "f": 0, "g": 2})


def vw_out_split_spec():
    """Out-split of vw_graph with p(w)=p(f)=1, everything else 0."""
    return OutSplitSpec(p_vertices={"v": 0, "w": 1}, p_edges={"e": 0, "f": 1, "g": 0})


def vw_in_split_spec():
    """In-split of vw_graph with p(w)=p(e)=1, everything else 0."""
    return InSplitSpec(p_vertices={"v": 0, "w": 1}, p_edges={"e": 1, "f": 0, "g": 0})


def loop2_out_split_spec():
    """Out-split of loop2 with p(u)=1, p(l1)=0, p(l2)=1."""
    return OutSplitSpec(p_vertices={"u": 1}, p_edges={"l1": 0, "l2": 1})


def loop2_in_split_spec():
    """In-split of loop2 with p(u)=1, p(l1)=0, p(l2)=1."""
    return InSplitSpec(p_vertices={"u": 1}, p_edges={"l1": 0, "l2": 1})


def loop_and_exit_out_delay_spec():
    return OutDelaySpec(
        d_vertices={"u": 1, "w": 0}, d_edges={"l": 1, "m": 0, "m2": 1}
    )


def loop_and_exit_in_delay_spec():
    return InDelaySpec(d_edges={"l": 0, "m": 2, "m2": 0})


def loop_and_exit_out_split_spec():
    """Split u's outgoing edges into classes {l, m2} and {m}."""
    return OutSplitSpec(
        p_vertices={"u": 1, "w": 0}, p_edges={"l": 0, "m": 1, "m2": 0}
    )


def loop_and_exit_in_split_spec():
    """Split w's incoming edges into classes {m} and {m2}."""
    return InSplitSpec(
        p_vertices={"u": 0, "w": 1}, p_edges={"l": 0, "m": 0, "m2": 1}
    )
