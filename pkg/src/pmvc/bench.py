"""Benchmark sweeps over (graph, spec, method, solver) cells.

A manifest is JSON::

    {"timeout": 10.0, "jobs": 1,
     "cells": [
       {"id": "dicke6", "graph": {"generator": "dicke", "n": 6, "k": 3},
        "spec": "dicke:3", "method": "tutte", "opt": true, "gs": "auto",
        "solver": "internal"},
       {"id": "from-file", "graph": "graphs/foo.graph", "spec": "ghz",
        "method": "enum-blossom"}
     ]}

Cells whose solver is missing are marked skipped and the run continues.
Results land as one JSON record per cell plus a flat CSV (instance,
method, solver, verdict, wall time) ready for instances-solved-vs-time
plots.
"""

from __future__ import annotations

import csv
import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path

from . import workflows
from .colorings import ColoringFamily, parse_spec
from .generators import (
    gen_complete_bipartite,
    gen_dicke_graph,
    parse_mutation_mode,
    refutation_mutate,
)
from .graph import BicoloredGraph, is_symmetric_vertex_set
from .graph_io import read_graph, read_sidecar
from .solvers import SolverProfile, load_profiles


@dataclass
class CellRecord:
    id: str
    method: str
    solver: str
    verdict: str
    wall_time: float
    skipped: bool = False
    detail: str = ""


def resolve_graph(spec, base_dir: Path) -> tuple[BicoloredGraph, list[list[int]]]:
    """A cell's graph is either a file path or a generator description.

    Returns the graph plus any recorded interchangeable vertex sets.
    """
    if isinstance(spec, str):
        path = base_dir / spec if not Path(spec).is_absolute() else Path(spec)
        g = read_graph(path)
        meta = read_sidecar(path)
        return g, meta.get("symmetric_sets", [])
    kind = spec["generator"]
    if kind == "dicke":
        n, k = int(spec["n"]), int(spec["k"])
        g = gen_dicke_graph(n, k)
        return g, [list(range(1, k + 1)), list(range(k + 1, n + 1))]
    if kind == "kbip":
        a, b = int(spec["a"]), int(spec["b"])
        return gen_complete_bipartite(a, b), [list(range(1, a + 1)),
                                              list(range(a + 1, a + b + 1))]
    if kind == "mutant":
        n, k = int(spec["n"]), int(spec["k"])
        base = gen_dicke_graph(n, k)
        mode = parse_mutation_mode(spec["mode"])
        g = refutation_mutate(base, mode, int(spec.get("seed", 0)))
        return g, [list(range(1, k + 1)), list(range(k + 1, n + 1))]
    raise ValueError(f"unknown generator {kind!r}")


def pick_gs(g: BicoloredGraph, gs_field, symmetric_sets: list[list[int]]) -> tuple[int, ...] | None:
    """Resolve a cell's gs option: explicit list, "auto", or absent."""
    if gs_field in (None, False):
        return None
    if gs_field == "auto":
        usable = [s for s in symmetric_sets
                  if len(s) >= 2 and is_symmetric_vertex_set(g, list(s))]
        if not usable:
            return None
        return tuple(max(usable, key=len))
    return tuple(int(v) for v in gs_field)


def run_cell(cell: dict, base_dir: Path, profiles: dict[str, SolverProfile],
             default_timeout: float | None) -> CellRecord:
    cid = str(cell.get("id", "cell"))
    method = cell.get("method", "tutte")
    solver_name = cell.get("solver", "internal")
    timeout = cell.get("timeout", default_timeout)
    profile = None
    if solver_name != "internal":
        profile = profiles.get(solver_name)
        if profile is None:
            return CellRecord(cid, method, solver_name, "SKIPPED", 0.0, True,
                              f"unknown solver profile {solver_name!r}")
        if not profile.available():
            return CellRecord(cid, method, solver_name, "SKIPPED", 0.0, True,
                              f"solver executable {profile.executable()!r} not found")
    try:
        g, symmetric_sets = resolve_graph(cell["graph"], base_dir)
        spec = parse_spec(cell["spec"]) if "spec" in cell else None
        if spec is None:
            raise ValueError("cell needs a 'spec'")
        gs = pick_gs(g, cell.get("gs"), symmetric_sets)
        start = time.perf_counter()
        result = workflows.check(
            g, spec, method,
            opt=bool(cell.get("opt", True)),
            gs=gs,
            profile=profile,
            shuffle_seed=cell.get("shuffle_seed"),
            timeout=timeout,
        )
        elapsed = time.perf_counter() - start
        return CellRecord(cid, method, solver_name, result.verdict, elapsed,
                          detail=result.detail)
    except Exception as exc:  # noqa: BLE001 - a bad cell must not kill the sweep
        return CellRecord(cid, method, solver_name, "ERROR", 0.0, False, str(exc))


def run_manifest(manifest_path: str | Path, out_dir: str | Path,
                 jobs: int | None = None,
                 profiles: dict[str, SolverProfile] | None = None) -> list[CellRecord]:
    manifest_path = Path(manifest_path)
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    manifest = json.loads(manifest_path.read_text(encoding="utf-8"))
    profiles = profiles if profiles is not None else load_profiles()
    cells = manifest.get("cells", [])
    default_timeout = manifest.get("timeout")
    workers = jobs or int(manifest.get("jobs", 1))
    base_dir = manifest_path.parent

    if workers > 1 and cells:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(
                lambda c: run_cell(c, base_dir, profiles, default_timeout), cells
            ))
    else:
        records = [run_cell(c, base_dir, profiles, default_timeout) for c in cells]

    (out_dir / "results.json").write_text(
        json.dumps([asdict(r) for r in records], indent=1) + "\n", encoding="utf-8"
    )
    with open(out_dir / "summary.csv", "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["instance", "method", "solver", "verdict", "wall_time"])
        for r in records:
            writer.writerow([r.id, r.method, r.solver, r.verdict, f"{r.wall_time:.4f}"])
    return records
