"""The two-level quantified formula: for every valid legal coloring there
must exist a perfect matching that agrees with it edge-colorwise.

The matrix is a circuit-style conversion of (valid AND legal) -> matching:
every gate is defined biconditionally, so under any universal assignment
the auxiliaries have exactly one consistent completion and a falsified
antecedent never traps the existential player.  Auxiliaries therefore
live in the innermost existential block.

The matching side constrains chosen edges to agree with the universally
chosen coloring; without that tie the formula would merely assert plain
matchability.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from . import colorings as col
from .cnf import Clause, CnfBuilder, CnfFormula, VarMap, totalizer
from .colorings import ColoringFamily, membership
from .graph import BicoloredGraph
from .graph_io import graph_digest
from .solvers import SAT, solve_internal


@dataclass(frozen=True)
class QbfFormula:
    """Prenex CNF: ordered quantifier blocks over disjoint id sets."""

    prefix: tuple[tuple[str, tuple[int, ...]], ...]
    clauses: tuple[Clause, ...]
    var_count: int
    comments: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        seen: set[int] = set()
        for quant, ids in self.prefix:
            if quant not in ("a", "e"):
                raise ValueError(f"bad quantifier {quant!r}")
            for vid in ids:
                if vid in seen:
                    raise ValueError(f"variable {vid} quantified twice")
                seen.add(vid)
        if len(seen) != self.var_count:
            raise ValueError("prefix does not cover every variable exactly once")

    def universal_ids(self) -> tuple[int, ...]:
        return tuple(v for quant, ids in self.prefix if quant == "a" for v in ids)


class _Gates:
    """Tseytin gate factory with biconditional definitions."""

    def __init__(self, b: CnfBuilder):
        self.b = b
        self._true: int | None = None

    def const(self, value: bool) -> int:
        if self._true is None:
            self._true = self.b.vm.aux("const")
            self.b.add(self._true)
        return self._true if value else -self._true

    def and_(self, lits: list[int]) -> int:
        if not lits:
            return self.const(True)
        if len(lits) == 1:
            return lits[0]
        out = self.b.vm.aux("and")
        for lit in lits:
            self.b.add(-out, lit)
        self.b.add_clause([out] + [-lit for lit in lits])
        return out

    def or_(self, lits: list[int]) -> int:
        if not lits:
            return self.const(False)
        if len(lits) == 1:
            return lits[0]
        out = self.b.vm.aux("or")
        for lit in lits:
            self.b.add(out, -lit)
        self.b.add_clause([-out] + list(lits))
        return out

    def exact_one(self, lits: list[int]) -> int:
        if not lits:
            return self.const(False)
        if len(lits) == 1:
            return lits[0]
        rungs: list[int] = []
        prev: int | None = None
        violations: list[int] = []
        for i, lit in enumerate(lits):
            if i == 0:
                rungs.append(lit)
                prev = lit
                continue
            violations.append(self.and_([lit, prev]))
            prev = self.or_([prev, lit])
            rungs.append(prev)
        any_two = self.or_(violations)
        return self.and_([rungs[-1], -any_two])

    def exact_k(self, lits: list[int], k: int) -> int:
        if k < 0 or k > len(lits):
            return self.const(False)
        if not lits:
            return self.const(True)
        outs = totalizer(self.b, lits, tag="qcard")
        if k == 0:
            return -outs[0]
        if k == len(lits):
            return outs[-1]
        return self.and_([outs[k - 1], -outs[k]])


def build_qbf(g: BicoloredGraph, spec: ColoringFamily) -> tuple[QbfFormula, VarMap]:
    """Universal block: coloring choices; existential: edges plus gates."""
    if spec.kind == col.EXPLICIT:
        raise ValueError("explicit coloring lists have no compact constraint form; "
                         "use the Tutte or enumeration paths instead")
    from .tutte import validate_spec_for_graph  # shared preconditions
    validate_spec_for_graph(g, spec)

    n, d = g.n, g.d
    vm = VarMap()
    vc = {(v, i): vm.named("vc", v, i) for v in range(1, n + 1) for i in range(1, d + 1)}
    ev = {idx: vm.named("e", idx) for idx in range(len(g.edges))}
    b = CnfBuilder(vm)
    gates = _Gates(b)

    valid = [gates.exact_one([vc[(v, i)] for i in range(1, d + 1)])
             for v in range(1, n + 1)]
    if spec.kind == col.GHZ:
        legal = gates.or_([gates.and_([vc[(v, i)] for v in range(1, n + 1)])
                           for i in range(1, d + 1)])
    elif spec.kind == col.W:
        legal = gates.exact_k([vc[(v, 1)] for v in range(1, n + 1)], 1)
    else:
        assert spec.k is not None
        legal = gates.exact_k([vc[(v, 1)] for v in range(1, n + 1)], spec.k)
    antecedent = gates.and_(valid + [legal])

    incident = g.incident_edge_indices()
    parts = [gates.exact_one([ev[i] for i in incident[v]]) for v in g.vertices]
    for idx, e in enumerate(g.edges):
        agree = gates.and_([vc[(e.u, e.cu)], vc[(e.v, e.cv)]])
        parts.append(gates.or_([-ev[idx], agree]))
    consequent = gates.and_(parts)

    b.add(-antecedent, consequent)

    universal = tuple(vc[(v, i)] for v in range(1, n + 1) for i in range(1, d + 1))
    existential = tuple(v for v in range(1, vm.var_count + 1) if v not in set(universal))
    comments = (
        "encoding=qbf-exactone",
        f"graph-sha256={graph_digest(g)} n={n} d={d} edges={len(g.edges)}",
        f"legal={spec.describe(n)}",
    )
    qbf = QbfFormula(
        prefix=(("a", universal), ("e", existential)),
        clauses=tuple(b.clauses),
        var_count=vm.var_count,
        comments=comments,
    )
    return qbf, vm


def write_qdimacs(qbf: QbfFormula) -> str:
    lines = [f"c {c}" for c in qbf.comments]
    lines.append(f"p cnf {qbf.var_count} {len(qbf.clauses)}")
    for quant, ids in qbf.prefix:
        if ids:
            lines.append(f"{quant} {' '.join(str(v) for v in ids)} 0")
    for clause in qbf.clauses:
        lines.append(" ".join(str(lit) for lit in clause) + " 0")
    return "\n".join(lines) + "\n"


def qbf_truth_bruteforce(
    qbf: QbfFormula,
    vm: VarMap,
    g: BicoloredGraph,
    spec: ColoringFamily,
    full: bool = False,
    invalid_samples: int = 64,
    seed: int = 0,
) -> bool:
    """Two-level expansion: for each universal assignment, decide the
    existential matrix with the in-process solver.

    With ``full`` every universal assignment is solved.  Otherwise
    assignments that fail the antecedent semantically (where the guarded
    matrix is satisfiable by construction) are only spot-checked: a seeded
    sample of them is still solved for real.
    """
    universal = qbf.universal_ids()
    matrix = CnfFormula(qbf.var_count, qbf.clauses)

    def solve_under(units: list[int]) -> bool:
        return solve_internal(matrix, extra_units=units).status == SAT

    deferred: list[list[int]] = []
    for bits in itertools.product((False, True), repeat=len(universal)):
        units = [vid if bit else -vid for vid, bit in zip(universal, bits)]
        if full or _antecedent_holds(vm, g, spec, dict(zip(universal, bits))):
            if not solve_under(units):
                return False
        else:
            deferred.append(units)
    rng = random.Random(seed)
    if len(deferred) > invalid_samples:
        deferred = rng.sample(deferred, invalid_samples)
    for units in deferred:
        if not solve_under(units):
            return False
    return True


def _antecedent_holds(vm: VarMap, g: BicoloredGraph, spec: ColoringFamily,
                      assignment: dict[int, bool]) -> bool:
    coloring = []
    for v in range(1, g.n + 1):
        hits = [i for i in range(1, g.d + 1) if assignment[vm.get("vc", v, i)]]
        if len(hits) != 1:
            return False
        coloring.append(hits[0])
    return membership(spec, tuple(coloring))
