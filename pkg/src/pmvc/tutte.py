"""The Tutte-set encoding: a purely existential formula that is satisfiable
exactly when some legal coloring's induced graph has no perfect matching.

A model picks a legal coloring (vc), a candidate vertex set (T), and a
component labeling (cc) of what survives after deleting T from the induced
graph; parity variables (Odd) plus a strict cardinality comparison assert
that more odd components remain than vertices were deleted.  Component
labels are deliberately slack (two components may share an index) — the
comparison only ever undercounts odd components, so decoded witnesses are
re-verified on the graph itself, never trusted from the solver.

The opt layer keeps component index i available only to vertices >= i and
pins empty indices down; the gs layer orders deletions along a known
interchangeable vertex list.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import colorings as col
from .cnf import CnfBuilder, CnfFormula, VarMap, count_greater, exact_k, exact_one, xor_to_cnf
from .colorings import ColoringFamily, membership
from .graph import (
    BicoloredGraph,
    VertexColoring,
    count_odd_components,
    induced_graph,
    vertex_deleted_subgraph,
)
from .graph_io import graph_digest


class MalformedModelError(Exception):
    """A solver model that does not decode to a coloring; signals a bug in
    the encoding or the solver, never a property of the graph."""


@dataclass(frozen=True)
class TutteOptions:
    """Encoding options: the legal-coloring family, the variable-dropping
    opt layer, and an ordered symmetric vertex list for gs."""

    legal: ColoringFamily
    opt: bool = False
    gs: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        if self.gs is not None:
            object.__setattr__(self, "gs", tuple(self.gs))


@dataclass(frozen=True)
class Witness:
    """A decoded refutation: a legal coloring whose induced graph has the
    deleted set as a Tutte set.  ``components`` is diagnostic only."""

    coloring: VertexColoring
    tutte_set: frozenset[int]
    components: dict[int, int] | None = None


@dataclass(frozen=True)
class TutteVariables:
    """The named variable layout shared by every rendering of the encoding."""

    vm: VarMap
    vc: dict[tuple[int, int], int]
    t: dict[int, int]
    ev: dict[int, int]
    cc: dict[tuple[int, int], int]
    odd: dict[int, int]


def allocate_tutte_variables(g: BicoloredGraph, opt: bool) -> TutteVariables:
    """Allocate vc/T/e/cc/Odd in a fixed dense order; with ``opt`` the
    component variables cc(v,i) with i > v are dropped (constant false)."""
    n, d = g.n, g.d
    vm = VarMap()
    vc = {(v, i): vm.named("vc", v, i) for v in range(1, n + 1) for i in range(1, d + 1)}
    t = {v: vm.named("T", v) for v in range(1, n + 1)}
    ev = {idx: vm.named("e", idx) for idx in range(len(g.edges))}
    cc: dict[tuple[int, int], int] = {}
    for v in range(1, n + 1):
        for i in range(1, n + 1):
            if opt and i > v:
                continue
            cc[(v, i)] = vm.named("cc", v, i)
    odd = {i: vm.named("odd", i) for i in range(1, n + 1)}
    return TutteVariables(vm, vc, t, ev, cc, odd)


def build_tutte(g: BicoloredGraph, opts: TutteOptions) -> tuple[CnfFormula, VarMap]:
    """Emit the full constraint system over vc/T/e/cc/Odd variables."""
    n, d = g.n, g.d
    spec = opts.legal
    validate_spec_for_graph(g, spec)
    if opts.gs is not None:
        validate_gs(g, opts.gs)

    layout = allocate_tutte_variables(g, opts.opt)
    vm, vc, t, ev, cc, odd = (layout.vm, layout.vc, layout.t, layout.ev,
                              layout.cc, layout.odd)

    b = CnfBuilder(vm)

    for v in range(1, n + 1):
        exact_one(b, [vc[(v, i)] for i in range(1, d + 1)], tag="validcoloring")

    emit_legal_coloring(b, g, spec, vc)

    for idx, e in enumerate(g.edges):
        lit = ev[idx]
        a, c2 = e.cu, e.cv
        b.add(-lit, -t[e.u])
        b.add(-lit, -t[e.v])
        b.add(-lit, vc[(e.u, a)])
        b.add(-lit, vc[(e.v, c2)])
        b.add(lit, t[e.u], t[e.v], -vc[(e.u, a)], -vc[(e.v, c2)])

    for idx, e in enumerate(g.edges):
        lit = ev[idx]
        for i in range(1, n + 1):
            cu = cc.get((e.u, i))
            cv = cc.get((e.v, i))
            if cu is not None and cv is not None:
                b.add(-lit, -cu, cv)
                b.add(-lit, cu, -cv)
            elif cu is not None:
                b.add(-lit, -cu)
            elif cv is not None:
                b.add(-lit, -cv)

    for v in range(1, n + 1):
        members = [cc[(v, i)] for i in range(1, n + 1) if (v, i) in cc]
        exact_one(b, members + [t[v]], tag="validcomponent")

    for i in range(1, n + 1):
        inputs = [cc[(v, i)] for v in range(1, n + 1) if (v, i) in cc]
        xor_to_cnf(b, odd[i], inputs, tag="odd")

    count_greater(b, [odd[i] for i in range(1, n + 1)],
                  [t[v] for v in range(1, n + 1)], tag="tuttecond")

    if opts.opt:
        for v in range(1, n + 1):
            for u in range(v, n + 1):
                b.add(-t[v], -cc[(u, v)])
            for i in range(1, v):
                for u in range(v, n + 1):
                    b.add(-cc[(v, i)], -cc[(u, v)])

    if opts.gs:
        for prev, cur in zip(opts.gs, opts.gs[1:]):
            b.add(-t[cur], t[prev])

    comments = (
        f"encoding=tutte-cnf opt={int(opts.opt)} gs={'-'.join(map(str, opts.gs)) if opts.gs else 'none'}",
        f"graph-sha256={graph_digest(g)} n={n} d={d} edges={len(g.edges)}",
        f"legal={spec.describe(n)}",
        f"named-vars={vm.named_count}",
    )
    return b.to_formula(comments), vm


def build_tutte_uncolored(g: BicoloredGraph, opt: bool = False,
                          gs: tuple[int, ...] | None = None) -> tuple[CnfFormula, VarMap]:
    """Single-color variant: satisfiable iff the graph has no perfect
    matching; the coloring layer degenerates to forced unit clauses."""
    if g.d != 1:
        raise ValueError(f"uncolored build requires d=1, got d={g.d}")
    return build_tutte(g, TutteOptions(legal=col.ghz(1), opt=opt, gs=gs))


def named_variable_count(n: int, edge_count: int, d: int, opt: bool = False) -> int:
    """Closed form for the named (pre-auxiliary) variable count."""
    base = n * n + edge_count + (d + 2) * n
    return base - n * (n - 1) // 2 if opt else base


def validate_spec_for_graph(g: BicoloredGraph, spec: ColoringFamily) -> None:
    if spec.kind in (col.W, col.DICKE) and g.d != 2:
        raise ValueError(f"{spec.kind} family requires a 2-color graph, got d={g.d}")
    if spec.kind == col.GHZ and spec.d != g.d:
        raise ValueError(f"GHZ family has d={spec.d} but the graph has d={g.d}")
    if spec.kind == col.DICKE and spec.k is not None and spec.k > g.n:
        raise ValueError(f"Dicke k={spec.k} exceeds n={g.n}")
    if spec.kind == col.EXPLICIT:
        assert spec.colorings is not None
        for c in spec.colorings:
            if len(c) != g.n:
                raise ValueError("explicit coloring length does not match the graph")
            if any(not 1 <= x <= g.d for x in c):
                raise ValueError("explicit coloring uses a color outside 1..d")


def validate_gs(g: BicoloredGraph, gs: tuple[int, ...]) -> None:
    if len(gs) < 2:
        raise ValueError("symmetric vertex list needs at least 2 vertices")
    if len(set(gs)) != len(gs):
        raise ValueError("symmetric vertex list contains duplicates")
    for v in gs:
        if not 1 <= v <= g.n:
            raise ValueError(f"symmetric vertex {v} out of range 1..{g.n}")


def emit_legal_coloring(b: CnfBuilder, g: BicoloredGraph, spec: ColoringFamily,
                    vc: dict[tuple[int, int], int]) -> None:
    n, d = g.n, g.d
    if spec.kind == col.GHZ:
        # monochromaticity as per-color equivalence chains
        for v in range(1, n):
            for i in range(1, d + 1):
                b.add(-vc[(v, i)], vc[(v + 1, i)])
                b.add(vc[(v, i)], -vc[(v + 1, i)])
    elif spec.kind == col.W:
        exact_k(b, [vc[(v, 1)] for v in range(1, n + 1)], 1, tag="legal")
    elif spec.kind == col.DICKE:
        assert spec.k is not None
        exact_k(b, [vc[(v, 1)] for v in range(1, n + 1)], spec.k, tag="legal")
    else:
        assert spec.colorings is not None
        selectors = [b.vm.aux("legalsel") for _ in spec.colorings]
        exact_one(b, selectors, tag="legalsel")
        for sel, coloring in zip(selectors, spec.colorings):
            for v in range(1, n + 1):
                b.add(-sel, vc[(v, coloring[v - 1])])


def decode_witness(model: dict[int, bool], vm: VarMap) -> Witness:
    """Read (coloring, deleted set, component labels) off a model."""
    by_vertex: dict[int, list[int]] = {}
    for name, vid in vm.named_items("vc"):
        _, v, i = name
        if model.get(vid, False):
            by_vertex.setdefault(v, []).append(i)
    vertices = sorted(v for name, _ in vm.named_items("T") for v in [name[1]])
    if not vertices:
        raise MalformedModelError("variable map carries no T variables")
    n = max(vertices)
    coloring: list[int] = []
    for v in range(1, n + 1):
        hits = by_vertex.get(v, [])
        if len(hits) != 1:
            raise MalformedModelError(
                f"vertex {v} has {len(hits)} true color variables, expected 1"
            )
        coloring.append(hits[0])
    tutte_set = frozenset(
        name[1] for name, vid in vm.named_items("T") if model.get(vid, False)
    )
    components: dict[int, int] = {}
    for name, vid in vm.named_items("cc"):
        _, v, i = name
        if model.get(vid, False) and v not in tutte_set:
            components[v] = min(i, components.get(v, i))
    return Witness(tuple(coloring), tutte_set, components or None)


def verify_witness(g: BicoloredGraph, spec: ColoringFamily, w: Witness) -> bool:
    """Ground-truth check built only from graph operations: the coloring is
    legal and deleting the set leaves more odd components than its size."""
    if len(w.coloring) != g.n:
        return False
    if not membership(spec, w.coloring):
        return False
    if any(not 1 <= v <= g.n for v in w.tutte_set):
        return False
    remainder = vertex_deleted_subgraph(induced_graph(g, w.coloring), w.tutte_set)
    return count_odd_components(remainder) > len(w.tutte_set)
