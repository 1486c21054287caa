"""Pseudo-Boolean constraint files, with an XOR extension.

The linear dialect follows competition OPB: a ``* #variable= N
#constraint= M`` header, one constraint per line, ``;`` terminated,
integer coefficients, literals ``x3`` or ``~x3``, relations ``>=`` and
``=``.  Parity constraints use our own extension line::

    @xor x3 ~x4 x5 = 1 ;

meaning the XOR of the literal values equals the right-hand bit.  For
solvers without native parity support, ``to_plain_opb`` compiles every
@xor line into clause-shaped linear constraints over fresh variables.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cnf import Clause, CnfBuilder, CnfFormula, VarMap, totalizer, xor_to_cnf


@dataclass(frozen=True)
class LinearLine:
    """sum(coef * literal-value) relation rhs."""

    terms: tuple[tuple[int, int], ...]  # (coefficient, signed literal)
    relation: str
    rhs: int

    def __post_init__(self) -> None:
        if self.relation not in (">=", "=", "<="):
            raise ValueError(f"unsupported relation {self.relation!r}")

    def satisfied(self, assignment: dict[int, bool]) -> bool:
        total = sum(c for c, lit in self.terms
                    if assignment[abs(lit)] == (lit > 0))
        if self.relation == ">=":
            return total >= self.rhs
        if self.relation == "<=":
            return total <= self.rhs
        return total == self.rhs


@dataclass(frozen=True)
class XorLine:
    """XOR of the literal values equals ``parity``."""

    lits: tuple[int, ...]
    parity: int

    def satisfied(self, assignment: dict[int, bool]) -> bool:
        acc = sum(1 for lit in self.lits if assignment[abs(lit)] == (lit > 0))
        return acc % 2 == self.parity


PbLine = LinearLine | XorLine


@dataclass(frozen=True)
class PbDocument:
    var_count: int
    lines: tuple[PbLine, ...]
    comments: tuple[str, ...] = ()

    def satisfied(self, assignment: dict[int, bool]) -> bool:
        return all(line.satisfied(assignment) for line in self.lines)


def clause_line(lits: Clause | list[int]) -> LinearLine:
    """A CNF clause as the linear constraint sum(lits) >= 1."""
    return LinearLine(tuple((1, lit) for lit in lits), ">=", 1)


def exactly_line(lits: list[int], k: int) -> LinearLine:
    return LinearLine(tuple((1, lit) for lit in lits), "=", k)


def _render_lit(lit: int) -> str:
    return f"~x{-lit}" if lit < 0 else f"x{lit}"


def render_opb(doc: PbDocument) -> str:
    lines = [f"* #variable= {doc.var_count} #constraint= {len(doc.lines)}"]
    lines.extend(f"* {c}" for c in doc.comments)
    for line in doc.lines:
        if isinstance(line, XorLine):
            body = " ".join(_render_lit(l) for l in line.lits)
            lines.append(f"@xor {body} = {line.parity} ;")
        else:
            body = " ".join(f"{c:+d} {_render_lit(l)}" for c, l in line.terms)
            lines.append(f"{body} {line.relation} {line.rhs} ;")
    return "\n".join(lines) + "\n"


def _parse_lit(token: str) -> int:
    neg = token.startswith("~")
    if neg:
        token = token[1:]
    if not token.startswith("x") or not token[1:].isdigit():
        raise ValueError(f"bad literal token {token!r}")
    vid = int(token[1:])
    return -vid if neg else vid


def parse_opb(text: str) -> PbDocument:
    var_count = 0
    comments: list[str] = []
    lines: list[PbLine] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("*"):
            body = line[1:].strip()
            if body.startswith("#variable="):
                parts = body.replace("#variable=", "").replace("#constraint=", "").split()
                var_count = int(parts[0])
            else:
                comments.append(body)
            continue
        if not line.endswith(";"):
            raise ValueError(f"constraint line missing ';': {line!r}")
        tokens = line[:-1].split()
        if tokens[0] == "@xor":
            if len(tokens) < 4 or tokens[-2] != "=":
                raise ValueError(f"bad @xor line: {line!r}")
            lits = tuple(_parse_lit(t) for t in tokens[1:-2])
            lines.append(XorLine(lits, int(tokens[-1])))
            continue
        rel_pos = next(i for i, t in enumerate(tokens) if t in (">=", "=", "<="))
        terms = []
        body = tokens[:rel_pos]
        if len(body) % 2 != 0:
            raise ValueError(f"odd term tokens in {line!r}")
        for i in range(0, len(body), 2):
            terms.append((int(body[i]), _parse_lit(body[i + 1])))
        lines.append(LinearLine(tuple(terms), tokens[rel_pos], int(tokens[rel_pos + 1])))
    return PbDocument(var_count, tuple(lines), tuple(comments))


def to_plain_opb(doc: PbDocument) -> PbDocument:
    """Compile @xor lines to clause-shaped linear constraints.

    Parity chains run through fresh variables appended after the existing
    ones, mirroring the CNF parity gadget.
    """
    next_var = doc.var_count
    out: list[PbLine] = []

    def fresh() -> int:
        nonlocal next_var
        next_var += 1
        return next_var

    def emit_even_parity(lits: list[int]) -> None:
        # block every odd-parity assignment of the (at most 4) literals
        m = len(lits)
        for mask in range(1 << m):
            bits = [(mask >> i) & 1 for i in range(m)]
            if sum(bits) % 2 == 1:
                out.append(clause_line([-l if bit else l
                                        for l, bit in zip(lits, bits)]))

    for line in doc.lines:
        if not isinstance(line, XorLine):
            out.append(line)
            continue
        lits = list(line.lits)
        # fold the target parity into the literal list
        if line.parity == 1 and lits:
            lits[0] = -lits[0]
        if not lits:
            if line.parity == 1:
                f = fresh()
                out.append(clause_line([f]))
                out.append(clause_line([-f]))
            continue
        while len(lits) > 4:
            acc = fresh()
            emit_even_parity([acc] + lits[:3])
            lits = [acc] + lits[3:]
        emit_even_parity(lits)
    return PbDocument(next_var, tuple(out), doc.comments + ("xor lines compiled to clauses",))


def pb_to_cnf(doc: PbDocument) -> CnfFormula:
    """Equisatisfiable CNF for a unit-coefficient PB+XOR document.

    The fallback path when no pseudo-Boolean solver is installed; only
    coefficients +-1 occur in the documents this package emits.
    """
    vm = VarMap()
    for i in range(1, doc.var_count + 1):
        vm.named("x", i)
    b = CnfBuilder(vm)
    for line in doc.lines:
        if isinstance(line, XorLine):
            if not line.lits:
                if line.parity == 1:
                    b.add_contradiction("pbxor")
                continue
            lits = list(line.lits)
            if len(lits) == 1:
                b.add(lits[0] if line.parity == 1 else -lits[0])
            else:
                target = lits[0] if line.parity == 0 else -lits[0]
                xor_to_cnf(b, target, lits[1:], tag="pbxor")
            continue
        lits = []
        rhs = line.rhs
        for coef, lit in line.terms:
            if coef == 1:
                lits.append(lit)
            elif coef == -1:
                lits.append(-lit)
                rhs += 1
            else:
                raise NotImplementedError(f"coefficient {coef} not supported")
        _bounded_count(b, lits, line.relation, rhs)
    return b.to_formula(doc.comments + ("pb+xor compiled to cnf",))


def _bounded_count(b: CnfBuilder, lits: list[int], relation: str, k: int) -> None:
    n = len(lits)
    lower = relation in (">=", "=")
    upper = relation in ("<=", "=")
    if (lower and k > n) or (upper and k < 0):
        b.add_contradiction("pbcard")
        return
    if (not lits) or (relation == ">=" and k <= 0) or (relation == "<=" and k >= n):
        return
    outs = totalizer(b, lits, tag="pbcard")
    if lower and k >= 1:
        b.add(outs[k - 1])
    if upper and k < n:
        b.add(-outs[k])
