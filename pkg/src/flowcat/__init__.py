"""Graph moves from symbolic dynamics, exact flow-equivalence invariants,
and a finite-category diagram engine.

The package has four layers:

* `graphs`, `moves` — directed multigraphs with infinite-bundle markers and
  the sink-removal / delay / split / truncated head-and-tail moves;
* `intmat`, `invariants` — exact integer linear algebra (fraction-free
  determinant, Smith normal form with a replayable witness) behind the
  Parry-Sullivan number and the Bowen-Franks group;
* `categories`, `diagrams`, `functors` — finite poset, finite-set and matrix
  categories, enumeration of the diagrams satisfying the coproduct condition,
  and executable equivalence functor pairs for the moves with a verification
  harness;
* `leavitt`, `casework` — relation-checked module operators attached to a
  matrix diagram, and scripted counting reports.

`zoo` holds small named example graphs and move specs used throughout the
tests and reports; `cli` exposes everything as the `flowcat` command.
"""

from .casework import (
    CaseReport,
    CaseworkError,
    cuntz_splice_report,
    desingularisation_counterexample,
    poset_count_obstructions,
    verify_acyclic_corollary,
    verify_poset_corollary,
)
from .categories import (
    CategoryError,
    FinSetSkeleton,
    MatCategory,
    PosetCategory,
    chain,
    diamond,
)
from .diagrams import (
    Diagram,
    DiagramError,
    canonical_diagram,
    check_coproduct_condition,
    enumerate_diagrams,
    make_diagram,
    random_diagram,
)
from .functors import (
    CorruptedPair,
    make_pair,
    standard_verification_suite,
    verify_equivalence,
)
from .graphs import (
    DirectedGraph,
    GraphError,
    adjacency_matrix,
    cohereditary_irreducible_subsets,
    graph,
    is_acyclic,
    is_irreducible,
    plus_construction,
)
from .intmat import IntMatrix, determinant, smith_normal_form
from .invariants import bowen_franks, franks_equivalent, parry_sullivan
from .leavitt import (
    LeavittError,
    build_module_operators,
    check_leavitt_relations,
    check_unital_action,
    intertwining_failures,
    module_map,
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

__version__ = "0.1.0"

__all__ = [
    "CaseReport",
    "CaseworkError",
    "CategoryError",
    "CorruptedPair",
    "Diagram",
    "DiagramError",
    "DirectedGraph",
    "FinSetSkeleton",
    "GraphError",
    "InDelaySpec",
    "InSplitSpec",
    "IntMatrix",
    "LeavittError",
    "MatCategory",
    "MoveError",
    "OutDelaySpec",
    "OutSplitSpec",
    "PosetCategory",
    "SearchCapExceeded",
    "add_heads_truncated",
    "add_tails_truncated",
    "adjacency_matrix",
    "bowen_franks",
    "build_module_operators",
    "canonical_diagram",
    "chain",
    "check_coproduct_condition",
    "check_leavitt_relations",
    "check_unital_action",
    "cohereditary_irreducible_subsets",
    "cuntz_splice_report",
    "desingularisation_counterexample",
    "determinant",
    "diamond",
    "enumerate_diagrams",
    "franks_equivalent",
    "graph",
    "in_delay",
    "in_split",
    "intertwining_failures",
    "is_acyclic",
    "is_irreducible",
    "make_diagram",
    "make_pair",
    "module_map",
    "out_delay",
    "out_split",
    "parry_sullivan",
    "plus_construction",
    "poset_count_obstructions",
    "random_diagram",
    "remove_sink",
    "smith_normal_form",
    "standard_verification_suite",
    "verify_acyclic_corollary",
    "verify_equivalence",
    "verify_poset_corollary",
]
