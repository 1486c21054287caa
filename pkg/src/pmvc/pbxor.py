"""The Tutte encoding rendered as pseudo-Boolean + XOR constraints.

Cardinality-shaped families stay native linear constraints, parity stays
native @xor lines, and the remaining families are clause-shaped.  The
named-variable layout is identical to the CNF build, so sidecar variable
maps and witness decoding work unchanged; no auxiliary variables are
needed except selectors for explicit coloring lists.
"""

from __future__ import annotations

from . import colorings as col
from .colorings import ColoringFamily
from .cnf import VarMap
from .graph import BicoloredGraph
from .graph_io import graph_digest
from .opb import LinearLine, PbDocument, PbLine, XorLine, clause_line, exactly_line
from .tutte import (
    TutteOptions,
    allocate_tutte_variables,
    validate_gs,
    validate_spec_for_graph,
)


def build_pbxor_tutte(g: BicoloredGraph, opts: TutteOptions) -> tuple[PbDocument, VarMap]:
    """Same constraint system as the CNF build, in PB+XOR form."""
    n, d = g.n, g.d
    spec = opts.legal
    validate_spec_for_graph(g, spec)
    if opts.gs is not None:
        validate_gs(g, opts.gs)

    layout = allocate_tutte_variables(g, opts.opt)
    vm, vc, t, ev, cc, odd = (layout.vm, layout.vc, layout.t, layout.ev,
                              layout.cc, layout.odd)
    lines: list[PbLine] = []

    for v in range(1, n + 1):
        lines.append(exactly_line([vc[(v, i)] for i in range(1, d + 1)], 1))

    if spec.kind == col.GHZ:
        for v in range(1, n):
            for i in range(1, d + 1):
                lines.append(clause_line([-vc[(v, i)], vc[(v + 1, i)]]))
                lines.append(clause_line([vc[(v, i)], -vc[(v + 1, i)]]))
    elif spec.kind in (col.W, col.DICKE):
        k = 1 if spec.kind == col.W else spec.k
        assert k is not None
        lines.append(exactly_line([vc[(v, 1)] for v in range(1, n + 1)], k))
    else:
        assert spec.colorings is not None
        selectors = [vm.aux("legalsel") for _ in spec.colorings]
        lines.append(exactly_line(selectors, 1))
        for sel, coloring in zip(selectors, spec.colorings):
            for v in range(1, n + 1):
                lines.append(clause_line([-sel, vc[(v, coloring[v - 1])]]))

    for idx, e in enumerate(g.edges):
        lit = ev[idx]
        lines.append(clause_line([-lit, -t[e.u]]))
        lines.append(clause_line([-lit, -t[e.v]]))
        lines.append(clause_line([-lit, vc[(e.u, e.cu)]]))
        lines.append(clause_line([-lit, vc[(e.v, e.cv)]]))
        lines.append(clause_line([lit, t[e.u], t[e.v],
                                  -vc[(e.u, e.cu)], -vc[(e.v, e.cv)]]))

    for idx, e in enumerate(g.edges):
        lit = ev[idx]
        for i in range(1, n + 1):
            cu = cc.get((e.u, i))
            cv = cc.get((e.v, i))
            if cu is not None and cv is not None:
                lines.append(clause_line([-lit, -cu, cv]))
                lines.append(clause_line([-lit, cu, -cv]))
            elif cu is not None:
                lines.append(clause_line([-lit, -cu]))
            elif cv is not None:
                lines.append(clause_line([-lit, -cv]))

    for v in range(1, n + 1):
        members = [cc[(v, i)] for i in range(1, n + 1) if (v, i) in cc]
        lines.append(exactly_line(members + [t[v]], 1))

    for i in range(1, n + 1):
        inputs = [cc[(v, i)] for v in range(1, n + 1) if (v, i) in cc]
        lines.append(XorLine(tuple([odd[i]] + inputs), 0))

    tutte_terms = [(1, odd[i]) for i in range(1, n + 1)]
    tutte_terms += [(-1, t[v]) for v in range(1, n + 1)]
    lines.append(LinearLine(tuple(tutte_terms), ">=", 1))

    if opts.opt:
        for v in range(1, n + 1):
            for u in range(v, n + 1):
                lines.append(clause_line([-t[v], -cc[(u, v)]]))
            for i in range(1, v):
                for u in range(v, n + 1):
                    lines.append(clause_line([-cc[(v, i)], -cc[(u, v)]]))

    if opts.gs:
        for prev, cur in zip(opts.gs, opts.gs[1:]):
            lines.append(clause_line([-t[cur], t[prev]]))

    comments = (
        f"encoding=tutte-pbxor opt={int(opts.opt)} gs={'-'.join(map(str, opts.gs)) if opts.gs else 'none'}",
        f"graph-sha256={graph_digest(g)} n={n} d={d} edges={len(g.edges)}",
        f"legal={spec.describe(n)}",
        f"named-vars={vm.named_count}",
    )
    return PbDocument(vm.var_count, tuple(lines), comments), vm


def emit_pbxor_tutte(g: BicoloredGraph, opts: TutteOptions) -> tuple[str, VarMap]:
    from .opb import render_opb

    doc, vm = build_pbxor_tutte(g, opts)
    return render_opb(doc), vm
