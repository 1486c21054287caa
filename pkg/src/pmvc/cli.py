"""Command-line entry point: generate / encode / check / solve / oracle / bench."""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from . import bench as bench_mod
from . import colorings as col
from . import workflows
from .cnf import parse_dimacs, write_dimacs
from .colorings import parse_spec
from .exactone import build_exactone_pm
from .generators import (
    dicke_graph_partitions,
    gen_complete_bipartite,
    gen_dicke_graph,
    parse_mutation_mode,
    refutation_mutate,
)
from .graph import COLOR_NAMES, BicoloredGraph, is_symmetric_vertex_set
from .graph_io import (
    graph_to_text,
    read_graph,
    read_sidecar,
    write_graph,
    write_sidecar,
)
from .opb import render_opb
from .oracle import brute_forall_pmvc, brute_pm, brute_tutte_set
from .pbxor import build_pbxor_tutte
from .qbf import build_qbf, write_qdimacs
from .asp import emit_asp_tutte
from .solvers import load_profiles, solve, solve_internal, solve_internal_bruteforce
from .tutte import TutteOptions, build_tutte
from .workflows import EXIT_CODES


@click.group()
def main() -> None:
    """Tools for deciding perfect-matching existence under vertex-coloring
    families: graph generators, constraint encoders, solver drivers, and
    brute-force oracles."""


# --------------------------------------------------------------------------
# generate

@main.group()
def generate() -> None:
    """Write benchmark graphs (with coloring-spec sidecars)."""


def _emit_graph(g: BicoloredGraph, out: str | None, as_json: bool,
                spec: col.ColoringFamily | None,
                symmetric_sets: list[list[int]] | None) -> None:
    if out is None or out == "-":
        click.echo(graph_to_text(g), nl=False)
        return
    write_graph(g, out, as_json=as_json)
    write_sidecar(out, spec=spec, symmetric_sets=symmetric_sets)
    click.echo(f"wrote {out} ({g.n} vertices, {len(g.edges)} edges)")


@generate.command("dicke-graph")
@click.option("-n", type=int, required=True, help="vertex count (even)")
@click.option("-k", type=int, required=True, help="red-vertex count, 1 <= k <= n/2")
@click.option("-o", "--out", type=click.Path(), default=None)
@click.option("--json", "as_json", is_flag=True, help="write the JSON form")
def generate_dicke(n: int, k: int, out: str | None, as_json: bool) -> None:
    """Two-partition graph matching every k-red coloring."""
    g = gen_dicke_graph(n, k)
    v1, v2 = dicke_graph_partitions(n, k)
    _emit_graph(g, out, as_json, col.dicke(k), [v1, v2])


@generate.command("kbip")
@click.option("-a", type=int, required=True)
@click.option("-b", type=int, required=True)
@click.option("-o", "--out", type=click.Path(), default=None)
@click.option("--json", "as_json", is_flag=True)
def generate_kbip(a: int, b: int, out: str | None, as_json: bool) -> None:
    """Uncolored complete bipartite graph K_{a,b} (d = 1)."""
    g = gen_complete_bipartite(a, b)
    sets = [list(range(1, a + 1)), list(range(a + 1, a + b + 1))]
    _emit_graph(g, out, as_json, col.ghz(1), sets)


@generate.command("mutant")
@click.option("--base", required=True, help="base graph, e.g. dicke:10,4")
@click.option("--mode", required=True, help="blue:0.4 or bicolored:2")
@click.option("--seed", type=int, default=0)
@click.option("-o", "--out", type=click.Path(), default=None)
@click.option("--json", "as_json", is_flag=True)
def generate_mutant(base: str, mode: str, seed: int, out: str | None,
                    as_json: bool) -> None:
    """Remove random edges from a generated base graph."""
    head, _, arg = base.partition(":")
    if head != "dicke":
        raise click.BadParameter("only dicke:n,k bases are supported")
    n, k = (int(x) for x in arg.split(","))
    g = refutation_mutate(gen_dicke_graph(n, k), parse_mutation_mode(mode), seed)
    v1, v2 = dicke_graph_partitions(n, k)
    _emit_graph(g, out, as_json, col.dicke(k), [v1, v2])


# --------------------------------------------------------------------------
# encode

ENCODINGS = ("tutte-cnf", "tutte-pbxor", "tutte-asp", "exactone-cnf",
             "exactone-pb", "qbf")


def _resolve_gs(g: BicoloredGraph, gs: str | None, graph_path: str) -> tuple[int, ...] | None:
    if not gs:
        return None
    if gs == "auto":
        meta = read_sidecar(graph_path)
        candidates = [s for s in meta.get("symmetric_sets", [])
                      if len(s) >= 2 and is_symmetric_vertex_set(g, list(s))]
        if not candidates:
            raise click.ClickException(
                "--gs auto found no verified symmetric set in the sidecar")
        return tuple(max(candidates, key=len))
    return tuple(int(v) for v in gs.replace(",", " ").split())


@main.command()
@click.argument("graph_path", type=click.Path(exists=True))
@click.option("--spec", "spec_text", required=True,
              help="ghz[:d] | w | dicke:k | path to a spec JSON")
@click.option("--encoding", type=click.Choice(ENCODINGS), required=True)
@click.option("--opt", is_flag=True, help="drop high component indices and pin empties")
@click.option("--gs", default=None,
              help="ordered symmetric vertex list '1,2,3' or 'auto' (sidecar)")
@click.option("-o", "--out", type=click.Path(), required=True)
def encode(graph_path: str, spec_text: str, encoding: str, opt: bool,
           gs: str | None, out: str) -> None:
    """Write a formula file plus a variable-map sidecar."""
    g = read_graph(graph_path)
    spec = parse_spec(spec_text)
    gs_list = _resolve_gs(g, gs, graph_path)
    opts = TutteOptions(legal=spec, opt=opt, gs=gs_list)
    vm = None
    if encoding == "tutte-cnf":
        formula, vm = build_tutte(g, opts)
        text = write_dimacs(formula)
    elif encoding == "tutte-pbxor":
        doc, vm = build_pbxor_tutte(g, opts)
        text = render_opb(doc)
    elif encoding == "tutte-asp":
        text = emit_asp_tutte(g, opts)
    elif encoding == "exactone-cnf":
        formula, vm = build_exactone_pm(g, "cnf")
        text = write_dimacs(formula)
    elif encoding == "exactone-pb":
        doc, vm = build_exactone_pm(g, "pb")
        text = render_opb(doc)
    else:
        qbf, vm = build_qbf(g, spec)
        text = write_qdimacs(qbf)
    Path(out).write_text(text, encoding="utf-8")
    if vm is not None:
        Path(out + ".vars.json").write_text(
            json.dumps(vm.to_json(), indent=1) + "\n", encoding="utf-8")
        click.echo(f"named variables: {vm.named_count}")
    click.echo(f"wrote {out}")


# --------------------------------------------------------------------------
# check

@main.command()
@click.argument("graph_path", type=click.Path(exists=True))
@click.option("--spec", "spec_text", default=None,
              help="defaults to the graph sidecar's spec if present")
@click.option("--method", type=click.Choice(workflows.METHODS), default="tutte")
@click.option("--opt/--no-opt", default=True)
@click.option("--gs", default=None)
@click.option("--solver", "solver_name", default="internal",
              help="'internal' or a profile name from the solver config")
@click.option("--solver-config", type=click.Path(), default=None)
@click.option("--shuffle-seed", type=int, default=None)
@click.option("--timeout", type=float, default=None)
def check(graph_path: str, spec_text: str | None, method: str, opt: bool,
          gs: str | None, solver_name: str, solver_config: str | None,
          shuffle_seed: int | None, timeout: float | None) -> None:
    """Decide the property end to end; exit 0=satisfies 1=violated 2=unknown."""
    g = read_graph(graph_path)
    if spec_text is None:
        from .graph_io import sidecar_spec
        spec = sidecar_spec(read_sidecar(graph_path))
        if spec is None:
            raise click.ClickException("no --spec given and no sidecar spec found")
    else:
        spec = parse_spec(spec_text)
    profile = None
    if solver_name != "internal":
        profiles = load_profiles(solver_config)
        if solver_name not in profiles:
            raise click.ClickException(f"unknown solver profile {solver_name!r}")
        profile = profiles[solver_name]
    result = workflows.check(
        g, spec, method, opt=opt,
        gs=_resolve_gs(g, gs, graph_path),
        profile=profile, shuffle_seed=shuffle_seed, timeout=timeout,
    )
    click.echo(f"verdict: {result.verdict}")
    if result.detail:
        click.echo(f"detail: {result.detail}")
    if result.witness is not None:
        names = {c: COLOR_NAMES.get(c, str(c)) for c in set(result.witness.coloring)}
        pretty = " ".join(names[c] for c in result.witness.coloring)
        click.echo(f"witness coloring: {list(result.witness.coloring)} ({pretty})")
        click.echo(f"witness deleted set: {sorted(result.witness.tutte_set)}")
        click.echo(f"witness verified: {result.witness_verified}")
    sys.exit(result.exit_code)


# --------------------------------------------------------------------------
# solve

@main.command("solve")
@click.argument("formula_path", type=click.Path(exists=True))
@click.option("--profile", "profile_name", default="internal")
@click.option("--solver-config", type=click.Path(), default=None)
@click.option("--timeout", type=float, default=None)
@click.option("--bruteforce", is_flag=True,
              help="use the capped exhaustive search instead of the default")
def solve_cmd(formula_path: str, profile_name: str, solver_config: str | None,
              timeout: float | None, bruteforce: bool) -> None:
    """Run one solver on a formula file and print the outcome."""
    if profile_name == "internal":
        formula = parse_dimacs(Path(formula_path).read_text(encoding="utf-8"))
        outcome = (solve_internal_bruteforce(formula) if bruteforce
                   else solve_internal(formula, timeout=timeout))
    else:
        profiles = load_profiles(solver_config)
        if profile_name not in profiles:
            raise click.ClickException(f"unknown solver profile {profile_name!r}")
        outcome = solve(formula_path, profiles[profile_name], timeout=timeout)
    click.echo(f"status: {outcome.status}"
               + (f" ({outcome.reason})" if outcome.reason else ""))
    click.echo(f"solver: {outcome.solver}  wall_time: {outcome.wall_time:.3f}s")
    if outcome.model:
        true_vars = sorted(v for v, val in outcome.model.items() if val)
        click.echo(f"true variables: {true_vars}")
    sys.exit({"SAT": 0, "UNSAT": 1}.get(outcome.status, 2))


# --------------------------------------------------------------------------
# oracle

@main.group()
def oracle() -> None:
    """Capped brute-force ground truth."""


@oracle.command("forall")
@click.argument("graph_path", type=click.Path(exists=True))
@click.option("--spec", "spec_text", required=True)
def oracle_forall(graph_path: str, spec_text: str) -> None:
    g = read_graph(graph_path)
    decision = brute_forall_pmvc(g, parse_spec(spec_text))
    if decision.satisfies:
        click.echo("verdict: SATISFIES")
        sys.exit(0)
    click.echo(f"verdict: VIOLATED  coloring: {list(decision.witness_coloring)}")
    sys.exit(1)


@oracle.command("pm")
@click.argument("graph_path", type=click.Path(exists=True))
def oracle_pm(graph_path: str) -> None:
    g = read_graph(graph_path)
    click.echo("perfect matching exists" if brute_pm(g) else "no perfect matching")


@oracle.command("tutte-set")
@click.argument("graph_path", type=click.Path(exists=True))
def oracle_tutte(graph_path: str) -> None:
    g = read_graph(graph_path)
    s = brute_tutte_set(g)
    click.echo("no deletion set found" if s is None else f"deletion set: {sorted(s)}")


# --------------------------------------------------------------------------
# bench

@main.command("bench")
@click.argument("manifest", type=click.Path(exists=True))
@click.option("-o", "--out", "out_dir", type=click.Path(), required=True)
@click.option("--jobs", type=int, default=None)
@click.option("--solver-config", type=click.Path(), default=None)
def bench_cmd(manifest: str, out_dir: str, jobs: int | None,
              solver_config: str | None) -> None:
    """Run a manifest of cells; write results.json and summary.csv."""
    profiles = load_profiles(solver_config)
    records = bench_mod.run_manifest(manifest, out_dir, jobs=jobs, profiles=profiles)
    solved = sum(1 for r in records if r.verdict in ("SATISFIES", "VIOLATED"))
    skipped = sum(1 for r in records if r.skipped)
    click.echo(f"{len(records)} cells: {solved} decided, {skipped} skipped")
    for r in records:
        click.echo(f"  {r.id}: {r.verdict} ({r.method}/{r.solver}, {r.wall_time:.3f}s)"
                   + (f" - {r.detail}" if r.detail else ""))


if __name__ == "__main__":
    main()
