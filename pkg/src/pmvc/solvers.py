"""Solving: external solver subprocesses plus two in-process fallbacks.

The in-process paths are a strict exhaustive enumerator (the testing
oracle, hard-capped) and a conflict-learning backtracking search used when
no external solver is configured.  The two are cross-checked against each
other in the test suite; external solvers are described by profiles with
a command template and an answer grammar.
"""

from __future__ import annotations

import heapq
import json
import os
import shlex
import shutil
import signal
import subprocess
import time
from dataclasses import dataclass
from pathlib import Path

from .cnf import Clause, CnfFormula

SAT = "SAT"
UNSAT = "UNSAT"
UNKNOWN = "UNKNOWN"

BRUTEFORCE_VAR_CAP = 30
DEFAULT_TIMEOUT = 1000.0


class SolverGuardError(Exception):
    """Formula too large for the exhaustive path."""


@dataclass(frozen=True)
class SolveOutcome:
    status: str
    model: dict[int, bool] | None = None
    atoms: tuple[str, ...] | None = None
    wall_time: float = 0.0
    solver: str = "internal"
    reason: str | None = None  # "timeout" | "error" for UNKNOWN
    detail: str = ""


# --------------------------------------------------------------------------
# Exhaustive enumeration (testing oracle)

def unit_propagate(clauses: list[Clause], assign: dict[int, bool]) -> bool:
    """Extend ``assign`` with every forced literal; False on conflict."""
    changed = True
    while changed:
        changed = False
        for clause in clauses:
            unassigned: int | None = None
            satisfied = False
            count = 0
            for lit in clause:
                val = assign.get(abs(lit))
                if val is None:
                    unassigned = lit
                    count += 1
                elif val == (lit > 0):
                    satisfied = True
                    break
            if satisfied:
                continue
            if count == 0:
                return False
            if count == 1 and unassigned is not None:
                assign[abs(unassigned)] = unassigned > 0
                changed = True
    return True


def enumerate_models(
    formula: CnfFormula,
    fixed: dict[int, bool] | None = None,
    free_cap: int = BRUTEFORCE_VAR_CAP,
):
    """Yield every total satisfying assignment, in lexicographic order.

    ``fixed`` pins variables beforehand; the cap applies to the variables
    still free after unit propagation of the pins.
    """
    clauses = list(formula.clauses)
    base: dict[int, bool] = dict(fixed or {})
    if not unit_propagate(clauses, base):
        return
    free = [v for v in range(1, formula.var_count + 1) if v not in base]
    if len(free) > free_cap:
        raise SolverGuardError(
            f"{len(free)} free variables exceed the exhaustive cap {free_cap}"
        )

    def dfs(assign: dict[int, bool], remaining: list[int]):
        if not remaining:
            yield dict(assign)
            return
        var = remaining[0]
        for value in (False, True):
            trial = dict(assign)
            trial[var] = value
            if unit_propagate(clauses, trial):
                rest = [v for v in remaining[1:] if v not in trial]
                yield from dfs(trial, rest)

    yield from dfs(base, free)


def solve_internal_bruteforce(formula: CnfFormula) -> SolveOutcome:
    """Exhaustive assignment search; refuses formulas above the var cap."""
    if formula.var_count > BRUTEFORCE_VAR_CAP:
        raise SolverGuardError(
            f"{formula.var_count} variables exceed the exhaustive cap {BRUTEFORCE_VAR_CAP}"
        )
    start = time.perf_counter()
    for model in enumerate_models(formula):
        return SolveOutcome(SAT, model=model, wall_time=time.perf_counter() - start,
                            solver="internal-bruteforce")
    return SolveOutcome(UNSAT, wall_time=time.perf_counter() - start,
                        solver="internal-bruteforce")


# --------------------------------------------------------------------------
# Conflict-learning backtracking search

class _Search:
    """Watched-literal DPLL with first-UIP clause learning and restarts."""

    def __init__(self, var_count: int, clauses: list[Clause]):
        self.nv = var_count
        self.val: list[int] = [0] * (var_count + 1)  # 0 unknown, 1 true, -1 false
        self.level: list[int] = [0] * (var_count + 1)
        self.reason: list[int] = [-1] * (var_count + 1)
        self.trail: list[int] = []
        self.trail_lim: list[int] = []
        self.activity: list[float] = [0.0] * (var_count + 1)
        self.phase: list[bool] = [False] * (var_count + 1)
        self.var_inc = 1.0
        self.clauses: list[list[int]] = []
        # watches[lit + nv] lists clauses to revisit when lit becomes true
        self.watches: list[list[int]] = [[] for _ in range(2 * var_count + 1)]
        self.units: list[int] = []
        self.is_learnt: list[bool] = []
        self.lbd: list[int] = []
        self.learnt_count = 0
        self.heap: list[tuple[float, int]] = [(0.0, v) for v in range(1, var_count + 1)]
        heapq.heapify(self.heap)
        self._qhead = 0
        for c in clauses:
            self._add_clause(list(c))
        self.max_learnts = max(2000, len(self.clauses))

    def _add_clause(self, lits: list[int], learnt: bool = False, lbd: int = 0) -> int:
        idx = len(self.clauses)
        self.clauses.append(lits)
        self.is_learnt.append(learnt)
        self.lbd.append(lbd)
        if learnt:
            self.learnt_count += 1
        if len(lits) == 1:
            self.units.append(lits[0])
        else:
            self.watches[-lits[0] + self.nv].append(idx)
            self.watches[-lits[1] + self.nv].append(idx)
        return idx

    def _enqueue(self, lit: int, reason: int) -> bool:
        v = lit if lit > 0 else -lit
        cur = self.val[v]
        want = 1 if lit > 0 else -1
        if cur != 0:
            return cur == want
        self.val[v] = want
        self.level[v] = len(self.trail_lim)
        self.reason[v] = reason
        self.trail.append(lit)
        return True

    def _propagate(self) -> int | None:
        """Returns a conflicting clause index or None."""
        val = self.val
        clauses = self.clauses
        watches = self.watches
        trail = self.trail
        nv = self.nv
        while self._qhead < len(trail):
            lit = trail[self._qhead]
            self._qhead += 1
            wl = watches[lit + nv]
            j = 0
            i = 0
            end = len(wl)
            while i < end:
                ci = wl[i]
                i += 1
                lits = clauses[ci]
                l0 = lits[0]
                if l0 == -lit:
                    l0 = lits[1]
                    lits[1] = -lit
                    lits[0] = l0
                v0 = val[l0] if l0 > 0 else -val[-l0]
                if v0 == 1:
                    wl[j] = ci
                    j += 1
                    continue
                moved = False
                for k in range(2, len(lits)):
                    lk = lits[k]
                    if (val[lk] if lk > 0 else -val[-lk]) != -1:
                        lits[k] = lits[1]
                        lits[1] = lk
                        watches[-lk + nv].append(ci)
                        moved = True
                        break
                if moved:
                    continue
                wl[j] = ci
                j += 1
                if v0 == -1:
                    # conflict: keep the untouched tail and report
                    while i < end:
                        wl[j] = wl[i]
                        j += 1
                        i += 1
                    del wl[j:]
                    self._qhead = len(trail)
                    return ci
                self._enqueue(l0, ci)
            del wl[j:]
        return None

    def _bump(self, v: int) -> None:
        act = self.activity[v] + self.var_inc
        self.activity[v] = act
        if act > 1e100:
            for i in range(1, self.nv + 1):
                self.activity[i] *= 1e-100
            self.var_inc *= 1e-100
            self.heap = [(-self.activity[x], x) for x in range(1, self.nv + 1)
                         if self.val[x] == 0]
            heapq.heapify(self.heap)
        elif self.val[v] == 0:
            heapq.heappush(self.heap, (-act, v))

    def _analyze(self, conflict: int) -> tuple[list[int], int]:
        learnt = [0]
        seen = [False] * (self.nv + 1)
        counter = 0
        lit0 = 0
        ci = conflict
        trail_pos = len(self.trail) - 1
        cur_level = len(self.trail_lim)
        first = True
        while True:
            for lit in (self.clauses[ci] if first else self.clauses[ci][1:]):
                v = abs(lit)
                if not seen[v] and self.level[v] > 0:
                    seen[v] = True
                    self._bump(v)
                    if self.level[v] >= cur_level:
                        counter += 1
                    else:
                        learnt.append(lit)
            first = False
            while not seen[abs(self.trail[trail_pos])]:
                trail_pos -= 1
            lit0 = self.trail[trail_pos]
            v0 = abs(lit0)
            seen[v0] = False
            counter -= 1
            trail_pos -= 1
            if counter == 0:
                break
            ci = self.reason[v0]
        learnt[0] = -lit0
        # drop literals whose reason clause lies entirely inside the learnt
        # clause (or at level 0); seen[] still marks the learnt literals here
        if len(learnt) > 1:
            kept = [learnt[0]]
            for lit in learnt[1:]:
                r = self.reason[abs(lit)]
                if r == -1:
                    kept.append(lit)
                    continue
                for x in self.clauses[r]:
                    xv = abs(x)
                    if xv != abs(lit) and self.level[xv] > 0 and not seen[xv]:
                        kept.append(lit)
                        break
            learnt = kept
        if len(learnt) == 1:
            return learnt, 0
        back = max(self.level[abs(l)] for l in learnt[1:])
        # move a literal of the backjump level into the second watch slot
        for idx in range(1, len(learnt)):
            if self.level[abs(learnt[idx])] == back:
                learnt[1], learnt[idx] = learnt[idx], learnt[1]
                break
        return learnt, back

    def _backtrack(self, level: int) -> None:
        if len(self.trail_lim) <= level:
            return
        bound = self.trail_lim[level]
        heap = self.heap
        for lit in reversed(self.trail[bound:]):
            v = abs(lit)
            self.phase[v] = self.val[v] == 1
            self.val[v] = 0
            self.reason[v] = -1
            heapq.heappush(heap, (-self.activity[v], v))
        del self.trail[bound:]
        del self.trail_lim[level:]
        self._qhead = min(self._qhead, len(self.trail))

    def _decide(self) -> int | None:
        heap = self.heap
        val = self.val
        while heap:
            act, v = heapq.heappop(heap)
            if val[v] == 0 and -act == self.activity[v]:
                return v if self.phase[v] else -v
        for v in range(1, self.nv + 1):
            if val[v] == 0:
                return v if self.phase[v] else -v
        return None

    def _reduce_db(self) -> bool:
        """At decision level 0: simplify against fixed assignments, drop the
        weaker half of the learnt clauses, rebuild watches.  False = UNSAT."""
        assert not self.trail_lim
        if self._propagate() is not None:
            return False
        val = self.val
        for lit in self.trail:
            self.reason[abs(lit)] = -1  # level-0 reasons are never revisited
        scored = sorted(
            (i for i in range(len(self.clauses))
             if self.is_learnt[i] and len(self.clauses[i]) > 2 and self.lbd[i] > 2),
            key=lambda i: (self.lbd[i], -i),
        )
        drop = set(scored[len(scored) // 2:])
        clauses: list[list[int]] = []
        is_learnt: list[bool] = []
        lbds: list[int] = []
        new_units: list[int] = []
        for i, cl in enumerate(self.clauses):
            if i in drop:
                continue
            kept_lits: list[int] = []
            satisfied = False
            for lit in cl:
                lv = val[lit] if lit > 0 else -val[-lit]
                if lv == 1:
                    satisfied = True
                    break
                if lv == 0:
                    kept_lits.append(lit)
            if satisfied:
                continue
            if not kept_lits:
                return False
            if len(kept_lits) == 1:
                new_units.append(kept_lits[0])
                continue
            clauses.append(kept_lits)
            is_learnt.append(self.is_learnt[i])
            lbds.append(self.lbd[i])
        self.clauses = clauses
        self.is_learnt = is_learnt
        self.lbd = lbds
        self.learnt_count = sum(is_learnt)
        self.watches = [[] for _ in range(2 * self.nv + 1)]
        for idx, cl in enumerate(clauses):
            self.watches[-cl[0] + self.nv].append(idx)
            self.watches[-cl[1] + self.nv].append(idx)
        for lit in new_units:
            if not self._enqueue(lit, -1):
                return False
        if self._propagate() is not None:
            return False
        self.max_learnts = int(self.max_learnts * 1.3)
        return True

    def solve(self, conflict_limit: int | None = None,
              deadline: float | None = None) -> tuple[str, dict[int, bool] | None, str | None]:
        for lit in self.units:
            if not self._enqueue(lit, -1):
                return UNSAT, None, None
        if self._propagate() is not None:
            return UNSAT, None, None
        conflicts = 0
        restart_bound = 64
        since_restart = 0
        while True:
            conflict = self._propagate()
            if conflict is not None:
                conflicts += 1
                since_restart += 1
                if conflict_limit is not None and conflicts > conflict_limit:
                    return UNKNOWN, None, "conflict limit reached"
                if deadline is not None and conflicts % 64 == 0 \
                        and time.perf_counter() > deadline:
                    return UNKNOWN, None, "timeout"
                if not self.trail_lim:
                    return UNSAT, None, None
                learnt, back = self._analyze(conflict)
                self._backtrack(back)
                lbd = len({self.level[abs(l)] for l in learnt})
                idx = self._add_clause(learnt, learnt=True, lbd=lbd)
                if len(learnt) == 1:
                    if not self._enqueue(learnt[0], -1):
                        return UNSAT, None, None
                else:
                    self._enqueue(learnt[0], idx)
                self.var_inc *= 1.05
                if since_restart >= restart_bound:
                    since_restart = 0
                    restart_bound = int(restart_bound * 1.3)
                    self._backtrack(0)
                    if self.learnt_count > self.max_learnts:
                        if not self._reduce_db():
                            return UNSAT, None, None
            else:
                decision = self._decide()
                if decision is None:
                    model = {v: self.val[v] == 1 for v in range(1, self.nv + 1)}
                    return SAT, model, None
                self.trail_lim.append(len(self.trail))
                self._enqueue(decision, -1)


def solve_internal(formula: CnfFormula, extra_units: list[int] | None = None,
                   conflict_limit: int | None = None,
                   timeout: float | None = None) -> SolveOutcome:
    """In-process solve without the exhaustive cap."""
    start = time.perf_counter()
    deadline = start + timeout if timeout is not None else None
    clauses = list(formula.clauses)
    if extra_units:
        clauses.extend((lit,) for lit in extra_units)
    status, model, why = _Search(formula.var_count, clauses).solve(conflict_limit, deadline)
    elapsed = time.perf_counter() - start
    if status == UNKNOWN:
        return SolveOutcome(UNKNOWN, wall_time=elapsed, solver="internal",
                            reason="timeout" if why == "timeout" else "error",
                            detail=why or "")
    if status == SAT:
        assert model is not None
        bad = _first_falsified(clauses, model)
        if bad is not None:
            raise AssertionError(f"internal solver returned a bad model at clause {bad}")
    return SolveOutcome(status, model=model, wall_time=elapsed, solver="internal")


def _first_falsified(clauses: list[Clause], model: dict[int, bool]) -> Clause | None:
    for clause in clauses:
        if not any(model.get(abs(l), False) == (l > 0) for l in clause):
            return clause
    return None


# --------------------------------------------------------------------------
# External solvers

@dataclass(frozen=True)
class SolverProfile:
    """How to run one external solver and read its answer.

    ``kind`` selects the answer grammar: "sat" and "opb" use competition
    s/v lines plus exit codes 10/20, "qbf" uses exit codes (and ``s cnf``
    lines), "asp" uses clingo-style SATISFIABLE/Answer output.
    """

    name: str
    command: str
    kind: str = "sat"
    timeout: float = DEFAULT_TIMEOUT
    expects_model: bool | None = None

    def __post_init__(self) -> None:
        if self.command.count("{input}") != 1:
            raise ValueError("command template must contain {input} exactly once")
        if self.timeout <= 0:
            raise ValueError("timeout must be positive")
        if self.kind not in ("sat", "opb", "qbf", "asp"):
            raise ValueError(f"unknown solver kind {self.kind!r}")

    @property
    def wants_model(self) -> bool:
        if self.expects_model is not None:
            return self.expects_model
        return self.kind in ("sat", "opb")

    def executable(self) -> str:
        return shlex.split(self.command)[0]

    def available(self) -> bool:
        return shutil.which(self.executable()) is not None


DEFAULT_PROFILES: dict[str, SolverProfile] = {
    "kissat": SolverProfile("kissat", "kissat -q {input}", "sat"),
    "cadical": SolverProfile("cadical", "cadical -q {input}", "sat"),
    "minisat": SolverProfile("minisat", "minisat -verb=0 {input}", "sat"),
    "clasp": SolverProfile("clasp", "clasp {input}", "sat"),
    "clingo": SolverProfile("clingo", "clingo --quiet=1 {input}", "asp"),
    "linpb": SolverProfile("linpb", "linpb {input}", "opb"),
    "roundingsat": SolverProfile("roundingsat", "roundingsat {input}", "opb"),
    "depqbf": SolverProfile("depqbf", "depqbf --no-dynamic-nenofex {input}", "qbf"),
}

PROFILE_ENV_VAR = "PMVC_SOLVERS"


def load_profiles(path: str | Path | None = None) -> dict[str, SolverProfile]:
    """Shipped defaults, overlaid with the user's config file if present."""
    profiles = dict(DEFAULT_PROFILES)
    chosen = path or os.environ.get(PROFILE_ENV_VAR)
    if chosen and Path(chosen).exists():
        data = json.loads(Path(chosen).read_text(encoding="utf-8"))
        for name, spec in data.get("profiles", {}).items():
            profiles[name] = SolverProfile(
                name=name,
                command=spec["command"],
                kind=spec.get("kind", "sat"),
                timeout=float(spec.get("timeout", DEFAULT_TIMEOUT)),
                expects_model=spec.get("expects_model"),
            )
    return profiles


def solve(input_path: str | Path, profile: SolverProfile,
          timeout: float | None = None) -> SolveOutcome:
    """Run one solver subprocess on a formula file and parse its answer."""
    input_path = Path(input_path)
    if not input_path.exists():
        raise FileNotFoundError(input_path)
    argv = [a.replace("{input}", str(input_path)) for a in shlex.split(profile.command)]
    limit = timeout if timeout is not None else profile.timeout
    start = time.perf_counter()
    try:
        proc = subprocess.Popen(
            argv, stdout=subprocess.PIPE, stderr=subprocess.PIPE,
            text=True, start_new_session=True,
        )
    except OSError as exc:
        return SolveOutcome(UNKNOWN, reason="error", solver=profile.name,
                            detail=f"failed to launch: {exc}")
    try:
        stdout, stderr = proc.communicate(timeout=limit)
    except subprocess.TimeoutExpired:
        try:
            os.killpg(os.getpgid(proc.pid), signal.SIGKILL)
        except (ProcessLookupError, PermissionError):
            proc.kill()
        proc.wait()
        return SolveOutcome(UNKNOWN, reason="timeout", solver=profile.name,
                            wall_time=time.perf_counter() - start)
    elapsed = time.perf_counter() - start
    return _parse_answer(profile, proc.returncode, stdout, stderr or "", elapsed)


def _parse_answer(profile: SolverProfile, returncode: int, stdout: str,
                  stderr: str, elapsed: float) -> SolveOutcome:
    status: str | None = None
    model: dict[int, bool] = {}
    atoms: list[str] = []
    if profile.kind == "asp":
        expecting_atoms = False
        for line in stdout.splitlines():
            text = line.strip()
            if expecting_atoms:
                atoms.extend(text.split())
                expecting_atoms = False
            if text.startswith("Answer:"):
                expecting_atoms = True
            elif text == "SATISFIABLE":
                status = SAT
            elif text == "UNSATISFIABLE":
                status = UNSAT
        if status is None and returncode in (10, 30):
            status = SAT
        elif status is None and returncode == 20:
            status = UNSAT
        if status is None:
            return SolveOutcome(UNKNOWN, reason="error", solver=profile.name,
                                wall_time=elapsed, detail=stderr[:500])
        return SolveOutcome(status, atoms=tuple(atoms) or None,
                            wall_time=elapsed, solver=profile.name)

    for line in stdout.splitlines():
        text = line.strip()
        if text.startswith("s "):
            token = text[2:].strip()
            if token in ("SATISFIABLE", "cnf 1", "1"):
                status = SAT
            elif token in ("UNSATISFIABLE", "cnf 0", "0"):
                status = UNSAT
        elif text.startswith("v "):
            for tok in text[2:].split():
                if profile.kind == "opb":
                    neg = tok.startswith("-x") or tok.startswith("~x")
                    digits = tok.lstrip("-~x")
                    if digits.isdigit():
                        model[int(digits)] = not neg
                elif tok.lstrip("-").isdigit():
                    lit = int(tok)
                    if lit != 0:
                        model[abs(lit)] = lit > 0
    if status is None:
        if returncode == 10:
            status = SAT
        elif returncode == 20:
            status = UNSAT
    if status is None:
        return SolveOutcome(UNKNOWN, reason="error", solver=profile.name,
                            wall_time=elapsed, detail=(stdout + stderr)[-500:])
    if status == SAT and profile.wants_model and not model:
        return SolveOutcome(UNKNOWN, reason="error", solver=profile.name,
                            wall_time=elapsed,
                            detail="SAT answer without a parseable model")
    return SolveOutcome(status, model=model or None, wall_time=elapsed,
                        solver=profile.name)
