#!/usr/bin/env python3
"""Write the named example graphs, move specs, and a poset file as
CLI-ready JSON, then print a few runnable command lines.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from flowcat import zoo
from flowcat.cli import graph_to_doc

GRAPHS = {
    "loop1": zoo.loop1,
    "loop2": zoo.loop2,
    "vw": zoo.vw_graph,
    "acyclic2": zoo.acyclic2,
    "cuntz_h": zoo.cuntz_h,
    "bundle_h": zoo.h_graph,
    "chain3": lambda: zoo.chain_graph(3),
    "cycle_with_sink": zoo.cycle_with_sink,
    "loop_and_exit": zoo.loop_and_exit,
}

# Delay and split values are given in one map keyed by vertex names and edge
# ids together; the CLI splits them using the graph.
MOVE_SPECS = {
    "vw_in_delay": {"move": "in_delay", "d": {"e": 1, "f": 0, "g": 2}},
    "vw_out_split": {
        "move": "out_split",
        "p": {"v": 0, "w": 1, "e": 0, "f": 1, "g": 0},
    },
    "vw_in_split": {
        "move": "in_split",
        "p": {"v": 0, "w": 1, "e": 1, "f": 0, "g": 0},
    },
    "loop_and_exit_out_delay": {
        "move": "out_delay",
        "d": {"u": 1, "w": 0, "l": 1, "m": 0, "m2": 1},
    },
    "cycle_with_sink_remove_sink": {"move": "remove_sink", "vertex": "s"},
    "acyclic2_add_heads": {"move": "add_heads", "depth": 2},
    "cycle_with_sink_add_tails": {"move": "add_tails", "depth": 2},
}

DIAMOND_POSET = {
    "name": "diamond",
    "elements": ["bot", "left", "right", "top"],
    "le": [["bot", "left"], ["bot", "right"], ["left", "top"], ["right", "top"]],
}

DEMOS = [
    "flowcat invariants {d}/loop2.json",
    "flowcat move {d}/vw.json {d}/vw_out_split.json",
    "flowcat franks {d}/loop2.json {d}/cuntz_h.json",
    "flowcat diagrams {d}/acyclic2.json --category poset:{d}/diamond_poset.json",
    "flowcat verify {d}/vw.json {d}/vw_out_split.json --category mat:2:3",
    "flowcat report poset {d}/loop_and_exit.json --category poset:chain2",
    "flowcat render {d}/bundle_h.json --dot",
]


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument(
        "--out-dir", default="sample_graphs", help="directory to write into"
    )
    args = parser.parse_args(argv)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)

    def dump(name, doc):
        path = out / f"{name}.json"
        path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
        print(f"wrote {path}")

    for name, build in sorted(GRAPHS.items()):
        dump(name, graph_to_doc(build()))
    for name, doc in sorted(MOVE_SPECS.items()):
        dump(name, doc)
    dump("diamond_poset", DIAMOND_POSET)

    print("\ntry for example:")
    for demo in DEMOS:
        print(" ", demo.format(d=out))
    return 0


if __name__ == "__main__":
    sys.exit(main())
