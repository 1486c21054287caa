"""Perfect matching as one Boolean per edge with per-vertex exactly-one
constraints, in CNF and pseudo-Boolean flavors.  Satisfiable iff the graph
has a perfect matching; the unsatisfiable direction is what the benchmark
suite exercises."""

from __future__ import annotations

import logging

from .cnf import CnfBuilder, CnfFormula, VarMap, exact_one
from .graph import BicoloredGraph
from .graph_io import graph_digest
from .opb import LinearLine, PbDocument, exactly_line

log = logging.getLogger(__name__)


def build_exactone_pm_cnf(g: BicoloredGraph) -> tuple[CnfFormula, VarMap]:
    vm = VarMap()
    ev = {idx: vm.named("e", idx) for idx in range(len(g.edges))}
    b = CnfBuilder(vm)
    incident = g.incident_edge_indices()
    for v in g.vertices:
        lits = [ev[i] for i in incident[v]]
        if not lits:
            log.warning("vertex %d is isolated; formula is trivially unsatisfiable", v)
            b.add_contradiction("isolated")
            continue
        exact_one(b, lits, tag="pm")
    comments = (
        "encoding=exactone-cnf",
        f"graph-sha256={graph_digest(g)} n={g.n} d={g.d} edges={len(g.edges)}",
        f"named-vars={vm.named_count}",
    )
    return b.to_formula(comments), vm


def build_exactone_pm_pb(g: BicoloredGraph) -> tuple[PbDocument, VarMap]:
    vm = VarMap()
    ev = {idx: vm.named("e", idx) for idx in range(len(g.edges))}
    lines: list[LinearLine] = []
    incident = g.incident_edge_indices()
    for v in g.vertices:
        lits = [ev[i] for i in incident[v]]
        if not lits:
            log.warning("vertex %d is isolated; formula is trivially unsatisfiable", v)
            contradiction = vm.aux("isolated")
            lines.append(exactly_line([contradiction], 1))
            lines.append(exactly_line([contradiction], 0))
            continue
        lines.append(exactly_line(lits, 1))
    comments = (
        "encoding=exactone-pb",
        f"graph-sha256={graph_digest(g)} n={g.n} d={g.d} edges={len(g.edges)}",
    )
    return PbDocument(vm.var_count, tuple(lines), comments), vm


def build_exactone_pm(g: BicoloredGraph, flavor: str = "cnf"):
    """Dispatch on flavor: "cnf" or "pb"."""
    if flavor == "cnf":
        return build_exactone_pm_cnf(g)
    if flavor == "pb":
        return build_exactone_pm_pb(g)
    raise ValueError(f"unknown exact-one flavor {flavor!r}")


def decode_matching(model: dict[int, bool], vm: VarMap,
                    g: BicoloredGraph) -> list[tuple[int, int]]:
    """Matched vertex pairs from a model of either flavor."""
    pairs = []
    for name, vid in vm.named_items("e"):
        if model.get(vid, False):
            e = g.edges[name[1]]
            pairs.append((e.u, e.v))
    return sorted(pairs)
