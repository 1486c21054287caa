"""The Tutte encoding as a ground-able answer-set program (clingo dialect).

Facts carry the graph, choice rules pick the coloring / deleted set /
component labels, counting aggregates express parity and the strict
comparison, and integrity constraints carry the rest.  An answer set
exists iff some legal coloring's induced graph has a Tutte set.

The module also ships a deliberately small syntax validator (statement
terminators, balanced delimiters, token sanity) used by the round-trip
tests; it is not a grounder.
"""

from __future__ import annotations

import re

from . import colorings as col
from .colorings import ColoringFamily
from .graph import BicoloredGraph
from .tutte import TutteOptions, validate_gs, validate_spec_for_graph


def emit_asp_tutte(g: BicoloredGraph, opts: TutteOptions) -> str:
    n, d = g.n, g.d
    spec = opts.legal
    validate_spec_for_graph(g, spec)
    if opts.gs is not None:
        validate_gs(g, opts.gs)

    out: list[str] = []
    out.append(f"% tutte encoding, {spec.describe(n)}, opt={int(opts.opt)}")
    out.append(f"vertex(1..{n}).")
    out.append(f"color(1..{d}).")
    out.append(f"compidx(1..{n}).")
    for idx, e in enumerate(g.edges):
        out.append(f"edge({idx},{e.u},{e.cu},{e.v},{e.cv}).")

    out.append("1 { vc(V,C) : color(C) } 1 :- vertex(V).")
    if spec.kind == col.GHZ:
        out.append(":- vc(U,I), vc(V,J), I < J.")
    elif spec.kind in (col.W, col.DICKE):
        k = 1 if spec.kind == col.W else spec.k
        out.append(f":- #count {{ V : vc(V,1) }} != {k}.")
    else:
        assert spec.colorings is not None
        for j, coloring in enumerate(spec.colorings, start=1):
            out.append(f"listed({j}).")
            for v, c in enumerate(coloring, start=1):
                out.append(f"allow({j},{v},{c}).")
        out.append("chosen(J) :- listed(J); vc(V,C) : allow(J,V,C).")
        out.append(":- #count { J : chosen(J) } = 0.")

    out.append("{ t(V) } :- vertex(V).")
    if opts.opt:
        out.append("1 { cc(V,I) : compidx(I), I <= V } 1 :- vertex(V), not t(V).")
    else:
        out.append("1 { cc(V,I) : compidx(I) } 1 :- vertex(V), not t(V).")
    out.append("re(E) :- edge(E,U,A,V,B), not t(U), not t(V), vc(U,A), vc(V,B).")
    out.append(":- re(E), edge(E,U,A,V,B), cc(U,I), not cc(V,I).")
    out.append(":- re(E), edge(E,U,A,V,B), cc(V,I), not cc(U,I).")
    out.append("odd(I) :- compidx(I), N = #count { V : cc(V,I) }, N \\ 2 = 1.")
    out.append("nodd(N) :- N = #count { I : odd(I) }.")
    out.append("ntutte(M) :- M = #count { V : t(V) }.")
    out.append(":- nodd(N), ntutte(M), N <= M.")

    if opts.opt:
        out.append(":- t(V), cc(U,V).")
        out.append(":- cc(V,I), I < V, cc(U,V).")
    if opts.gs:
        for j, v in enumerate(opts.gs, start=1):
            out.append(f"gsord({j},{v}).")
        out.append(":- gsord(J,U), gsord(J-1,W), t(U), not t(W).")

    out.append("#show vc/2.")
    out.append("#show t/1.")
    return "\n".join(out) + "\n"


# --------------------------------------------------------------------------
# Minimal syntax validation

_ID = r"[a-z][A-Za-z0-9_]*"
_STATEMENT_OK = re.compile(
    r"^(%|#show\s|#const\s|:-|\{|\d|" + _ID + r")"
)
_TOKEN = re.compile(
    r"\s+|%[^\n]*|#(?:show|count|sum|const)\b|\.\.|:-|:|;|,|\{|\}|\(|\)"
    r"|!=|<=|>=|=|<|>|\\|\+|-|\*|/|\d+|[A-Z_][A-Za-z0-9_]*|" + _ID + r"|\."
)


def split_statements(text: str) -> list[str]:
    """Split on statement-terminating dots, respecting ``..`` ranges."""
    statements: list[str] = []
    buf: list[str] = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "%":
            while i < len(text) and text[i] != "\n":
                i += 1
            continue
        if ch == "." and i + 1 < len(text) and text[i + 1] == ".":
            buf.append("..")
            i += 2
            continue
        if ch == ".":
            statement = "".join(buf).strip()
            if statement:
                statements.append(statement)
            buf = []
            i += 1
            continue
        buf.append(ch)
        i += 1
    tail = "".join(buf).strip()
    if tail:
        statements.append(tail)
    return statements


def validate_asp(text: str) -> list[str]:
    """Cheap well-formedness errors (empty list means it re-parses)."""
    errors: list[str] = []
    stripped = re.sub(r"%[^\n]*", "", text)
    tail = stripped.rstrip()
    if tail and not tail.endswith("."):
        errors.append("program does not end with '.'")
    for idx, st in enumerate(split_statements(text), start=1):
        if not _STATEMENT_OK.match(st):
            errors.append(f"statement {idx}: unrecognized start: {st[:40]!r}")
        for open_ch, close_ch in (("(", ")"), ("{", "}")):
            if st.count(open_ch) != st.count(close_ch):
                errors.append(f"statement {idx}: unbalanced {open_ch}{close_ch}")
        pos = 0
        while pos < len(st):
            m = _TOKEN.match(st, pos)
            if not m:
                errors.append(f"statement {idx}: bad token at {st[pos:pos+12]!r}")
                break
            pos = m.end()
    return errors


def decode_answer_atoms(atoms: list[str] | tuple[str, ...]) -> tuple[tuple[int, ...] | None, frozenset[int]]:
    """Pull (coloring, deleted set) out of a clingo answer set."""
    vc: dict[int, int] = {}
    tutte: set[int] = set()
    for atom in atoms:
        m = re.match(r"vc\((\d+),(\d+)\)$", atom)
        if m:
            vc[int(m.group(1))] = int(m.group(2))
            continue
        m = re.match(r"t\((\d+)\)$", atom)
        if m:
            tutte.add(int(m.group(1)))
    coloring = None
    if vc:
        n = max(vc)
        if set(vc) == set(range(1, n + 1)):
            coloring = tuple(vc[v] for v in range(1, n + 1))
    return coloring, frozenset(tutte)
