"""Deciding perfect-matching existence for every coloring in a legal family.

The toolkit covers the whole pipeline: bicolored-graph model and benchmark
generators, the enumerate-and-match decider, constraint encodings (the
Tutte-set CNF with its optimization layers, exact-one CNF/PB, a two-level
QBF, PB+XOR and ASP renderings), external-solver drivers with an
in-process fallback, witness decoding with independent verification, and
hard-capped brute-force oracles.
"""

from .colorings import (
    ColoringFamily,
    EnumerationCapError,
    dicke,
    enumerate_colorings,
    explicit,
    family_size,
    ghz,
    membership,
    parse_spec,
    w_state,
)
from .graph import (
    BicoloredGraph,
    Edge,
    VertexColoring,
    count_color,
    count_odd_components,
    induced_graph,
    is_symmetric_vertex_set,
    make_graph,
    vertex_deleted_subgraph,
)
from .generators import (
    gen_complete_bipartite,
    gen_dicke_graph,
    refutation_mutate,
    remove_bicolored,
    remove_blue_fraction,
)
from .matching import Decision, Matching, enum_blossom, has_perfect_matching, max_matching
from .oracle import (
    OracleCapError,
    brute_forall_pmvc,
    brute_pm,
    brute_tutte_set,
    enumerate_perfect_matchings,
    inherited_coloring,
)
from .tutte import (
    MalformedModelError,
    TutteOptions,
    Witness,
    build_tutte,
    build_tutte_uncolored,
    decode_witness,
    named_variable_count,
    verify_witness,
)
from .exactone import build_exactone_pm
from .qbf import QbfFormula, build_qbf, qbf_truth_bruteforce, write_qdimacs
from .pbxor import build_pbxor_tutte, emit_pbxor_tutte
from .asp import emit_asp_tutte, validate_asp
from .cnf import CnfFormula, VarMap, parse_dimacs, write_dimacs
from .solvers import (
    SolveOutcome,
    SolverProfile,
    load_profiles,
    solve,
    solve_internal,
    solve_internal_bruteforce,
)
from .workflows import CheckResult, check

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
