"""Clause database, named-variable bookkeeping, and reusable CNF gadgets.

Gadgets are written so that every satisfying assignment of the original
variables extends to the auxiliaries in exactly one way (definitions are
biconditional, never one-sided).  That keeps projections faithful and
model counts honest, which the test suite checks by enumeration.

Variable names are structured tuples such as ``("vc", v, i)`` or
``("aux", "xor", 7)``.  Named variables get the dense ids 1..k first;
auxiliaries always come after every named id.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field

VarName = tuple
Clause = tuple[int, ...]

_NAME_RE = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)\((.*)\)$")


class CnfError(Exception):
    pass


class VarMap:
    """Bidirectional map between structured variable names and 1..m ids."""

    def __init__(self) -> None:
        self._id_by_name: dict[VarName, int] = {}
        self._name_by_id: dict[int, VarName] = {}
        self._aux_counters: dict[str, int] = {}
        self._named_count = 0
        self._aux_started = False

    @property
    def var_count(self) -> int:
        return len(self._id_by_name)

    @property
    def named_count(self) -> int:
        return self._named_count

    def named(self, *parts) -> int:
        """Allocate a fresh named variable; named ids precede all aux ids."""
        if self._aux_started:
            raise CnfError("cannot allocate named variables after auxiliaries")
        name = tuple(parts)
        if name in self._id_by_name:
            raise CnfError(f"variable {format_name(name)} already allocated")
        vid = len(self._id_by_name) + 1
        self._id_by_name[name] = vid
        self._name_by_id[vid] = name
        self._named_count = vid
        return vid

    def aux(self, tag: str) -> int:
        """Allocate an auxiliary variable tagged with its constraint family."""
        self._aux_started = True
        counter = self._aux_counters.get(tag, 0)
        self._aux_counters[tag] = counter + 1
        name = ("aux", tag, counter)
        vid = len(self._id_by_name) + 1
        self._id_by_name[name] = vid
        self._name_by_id[vid] = name
        return vid

    def get(self, *parts) -> int:
        return self._id_by_name[tuple(parts)]

    def try_get(self, *parts) -> int | None:
        return self._id_by_name.get(tuple(parts))

    def name_of(self, vid: int) -> VarName:
        return self._name_by_id[vid]

    def named_items(self, prefix: str):
        """Yield (name, id) for named variables whose first part is prefix."""
        for name, vid in self._id_by_name.items():
            if name[0] == prefix:
                yield name, vid

    def to_json(self) -> dict:
        return {
            "var_count": self.var_count,
            "named_count": self.named_count,
            "names": {format_name(n): i for n, i in self._id_by_name.items()},
        }

    @classmethod
    def from_json(cls, obj: dict) -> "VarMap":
        vm = cls.__new__(cls)
        vm._id_by_name = {}
        vm._name_by_id = {}
        vm._aux_counters = {}
        vm._aux_started = True
        vm._named_count = int(obj["named_count"])
        for text, vid in obj["names"].items():
            name = parse_name(text)
            vm._id_by_name[name] = int(vid)
            vm._name_by_id[int(vid)] = name
        return vm


def format_name(name: VarName) -> str:
    head, *rest = name
    return f"{head}({','.join(str(p) for p in rest)})" if rest else str(head)


def parse_name(text: str) -> VarName:
    m = _NAME_RE.match(text)
    if not m:
        return (text,)
    head, args = m.groups()
    parts: list = [head]
    for piece in args.split(","):
        piece = piece.strip()
        parts.append(int(piece) if piece.lstrip("-").isdigit() else piece)
    return tuple(parts)


@dataclass(frozen=True)
class CnfFormula:
    """Immutable clause database plus traceability comments."""

    var_count: int
    clauses: tuple[Clause, ...]
    comments: tuple[str, ...] = ()

    @property
    def clause_count(self) -> int:
        return len(self.clauses)


class CnfBuilder:
    """Accumulates clauses, validating ids, rejecting tautologies."""

    def __init__(self, varmap: VarMap | None = None) -> None:
        self.vm = varmap or VarMap()
        self.clauses: list[Clause] = []

    def add(self, *lits: int) -> None:
        self.add_clause(lits)

    def add_clause(self, lits) -> None:
        seen: dict[int, int] = {}
        out: list[int] = []
        for lit in lits:
            if lit == 0 or abs(lit) > self.vm.var_count:
                raise CnfError(f"literal {lit} references an unallocated variable")
            if -lit in seen:
                raise CnfError(f"tautological clause: {lits}")
            if lit not in seen:
                seen[lit] = 1
                out.append(lit)
        if not out:
            raise CnfError("empty clause")
        self.clauses.append(tuple(out))

    def add_contradiction(self, tag: str) -> None:
        """Make the formula unsatisfiable without an empty clause."""
        f = self.vm.aux(tag)
        self.add(f)
        self.add(-f)

    def to_formula(self, comments: tuple[str, ...] = ()) -> CnfFormula:
        return CnfFormula(self.vm.var_count, tuple(self.clauses), tuple(comments))


# --------------------------------------------------------------------------
# Gadgets

PAIRWISE_LIMIT = 6
XOR_CHUNK = 3


def exact_one(b: CnfBuilder, lits: list[int], tag: str = "exactone",
              pairwise_limit: int = PAIRWISE_LIMIT) -> None:
    """Exactly one literal true: pairwise up to the limit, then a
    prefix-or ladder whose rungs are uniquely determined by the inputs."""
    if not lits:
        raise CnfError("exact_one over an empty literal list")
    if len(lits) <= pairwise_limit:
        b.add_clause(lits)
        for x, y in itertools.combinations(lits, 2):
            b.add(-x, -y)
        return
    rungs = [b.vm.aux(tag) for _ in lits]
    b.add(-rungs[0], lits[0])
    b.add(rungs[0], -lits[0])
    for i in range(1, len(lits)):
        b.add(rungs[i], -rungs[i - 1])
        b.add(rungs[i], -lits[i])
        b.add(-rungs[i], rungs[i - 1], lits[i])
        b.add(-lits[i], -rungs[i - 1])
    b.add(rungs[-1])


def _even_parity(b: CnfBuilder, lits: list[int]) -> None:
    """Force XOR of the literal values to be false (block odd assignments)."""
    m = len(lits)
    for bits in itertools.product((False, True), repeat=m):
        if sum(bits) % 2 == 1:
            b.add_clause(tuple(-l if bit else l for l, bit in zip(lits, bits)))


def xor_to_cnf(b: CnfBuilder, target: int, inputs: list[int], tag: str = "xor",
               chunk: int = XOR_CHUNK) -> None:
    """target <-> XOR(inputs), chunked through fresh accumulator variables
    so no emitted parity relation exceeds ``chunk``+1 literals."""
    if not inputs:
        raise CnfError("xor_to_cnf needs at least one input")
    if len(inputs) <= chunk:
        _even_parity(b, [target] + list(inputs))
        return
    acc = b.vm.aux(tag)
    _even_parity(b, [acc] + list(inputs[:chunk]))
    pos = chunk
    while len(inputs) - pos > chunk - 1:
        nxt = b.vm.aux(tag)
        _even_parity(b, [nxt, acc] + list(inputs[pos:pos + chunk - 1]))
        acc = nxt
        pos += chunk - 1
    _even_parity(b, [target, acc] + list(inputs[pos:]))


def totalizer(b: CnfBuilder, lits: list[int], tag: str = "card") -> list[int]:
    """Unary counter: output[i] is true iff at least i+1 inputs are true.

    Both clause directions are emitted, so every output and internal bit
    is a function of the inputs.
    """
    if not lits:
        return []
    if len(lits) == 1:
        return [lits[0]]
    mid = len(lits) // 2
    left = totalizer(b, lits[:mid], tag)
    right = totalizer(b, lits[mid:], tag)
    p, q = len(left), len(right)
    out = [b.vm.aux(tag) for _ in range(p + q)]

    def l_at(vec: list[int], idx: int) -> int | None:
        # 1-based read with the convention vec[0]=true, vec[len+1]=false
        return vec[idx - 1] if 1 <= idx <= len(vec) else None

    for i in range(p + 1):
        for j in range(q + 1):
            if 1 <= i + j <= p + q:
                clause = [out[i + j - 1]]
                if i > 0:
                    clause.append(-left[i - 1])
                if j > 0:
                    clause.append(-right[j - 1])
                b.add_clause(clause)
            if i + j + 1 <= p + q:
                clause = [-out[i + j]]
                la = l_at(left, i + 1)
                lb = l_at(right, j + 1)
                if la is None and lb is None:
                    continue
                if la is not None:
                    clause.append(la)
                if lb is not None:
                    clause.append(lb)
                b.add_clause(clause)
    return out


def exact_k(b: CnfBuilder, lits: list[int], k: int, tag: str = "exactk") -> None:
    """Exactly k of the literals true, via a totalizer bounded both ways."""
    n = len(lits)
    if not 0 <= k <= n:
        raise CnfError(f"exact_k out of range: k={k}, n={n}")
    if k == 0:
        for lit in lits:
            b.add(-lit)
        return
    if k == n:
        for lit in lits:
            b.add(lit)
        return
    out = totalizer(b, lits, tag)
    b.add(out[k - 1])
    b.add(-out[k])


def count_greater(b: CnfBuilder, xs: list[int], ys: list[int], tag: str = "cmp") -> None:
    """Number of true xs strictly greater than number of true ys."""
    if not xs:
        b.add_contradiction(tag)
        return
    ox = totalizer(b, list(xs), tag)
    oy = totalizer(b, list(ys), tag) if ys else []
    selectors = []
    for i in range(len(ox)):
        if i < len(oy):
            d = b.vm.aux(tag)
            b.add(-d, ox[i])
            b.add(-d, -oy[i])
            b.add(d, -ox[i], oy[i])
            selectors.append(d)
        else:
            # past |ys| the comparison degenerates to "at least i+1 xs"
            selectors.append(ox[i])
    b.add_clause(selectors)


# --------------------------------------------------------------------------
# DIMACS

def write_dimacs(formula: CnfFormula) -> str:
    lines = [f"c {c}" for c in formula.comments]
    lines.append(f"p cnf {formula.var_count} {formula.clause_count}")
    for clause in formula.clauses:
        lines.append(" ".join(str(lit) for lit in clause) + " 0")
    return "\n".join(lines) + "\n"


def parse_dimacs(text: str) -> CnfFormula:
    var_count = 0
    comments: list[str] = []
    clauses: list[Clause] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("c"):
            comments.append(line[2:] if line.startswith("c ") else line[1:])
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise CnfError(f"bad DIMACS header: {line!r}")
            var_count = int(parts[2])
            continue
        lits = [int(t) for t in line.split()]
        if lits and lits[-1] == 0:
            lits = lits[:-1]
        if lits:
            clauses.append(tuple(lits))
    return CnfFormula(var_count, tuple(clauses), tuple(comments))
