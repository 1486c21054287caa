"""Graph file formats: a line-oriented text form and an equivalent JSON form.

Text format::

    # optional comment lines
    n d
    u cu v cv     (one edge per line)

JSON format::

    {"n": 6, "d": 2, "edges": [[u, cu, v, cv], ...]}

Generator sidecars (``<out>.meta.json``) record the intended coloring
family and any known interchangeable vertex sets so later stages can pick
them up without re-deriving anything.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

from .colorings import ColoringFamily, spec_from_json, spec_to_json
from .graph import BicoloredGraph, Edge


def graph_to_text(g: BicoloredGraph) -> str:
    if g.deleted:
        raise ValueError("graphs with deleted vertices are in-memory only")
    lines = [f"{g.n} {g.d}"]
    lines.extend(f"{e.u} {e.cu} {e.v} {e.cv}" for e in g.edges)
    return "\n".join(lines) + "\n"


def graph_from_text(text: str) -> BicoloredGraph:
    header: tuple[int, int] | None = None
    edges: list[Edge] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if header is None:
            if len(parts) != 2:
                raise ValueError(f"line {lineno}: expected header 'n d'")
            header = (int(parts[0]), int(parts[1]))
            continue
        if len(parts) != 4:
            raise ValueError(f"line {lineno}: expected edge 'u cu v cv'")
        u, cu, v, cv = (int(p) for p in parts)
        edges.append(Edge(u=u, v=v, cu=cu, cv=cv))
    if header is None:
        raise ValueError("empty graph file")
    return BicoloredGraph(header[0], header[1], tuple(edges))


def graph_to_json(g: BicoloredGraph) -> dict:
    if g.deleted:
        raise ValueError("graphs with deleted vertices are in-memory only")
    return {"n": g.n, "d": g.d, "edges": [[e.u, e.cu, e.v, e.cv] for e in g.edges]}


def graph_from_json(obj: dict) -> BicoloredGraph:
    edges = tuple(Edge(u=u, v=v, cu=cu, cv=cv) for u, cu, v, cv in obj["edges"])
    return BicoloredGraph(int(obj["n"]), int(obj["d"]), edges)


def write_graph(g: BicoloredGraph, path: str | Path, as_json: bool = False) -> None:
    path = Path(path)
    if as_json:
        path.write_text(json.dumps(graph_to_json(g), indent=1) + "\n", encoding="utf-8")
    else:
        path.write_text(graph_to_text(g), encoding="utf-8")


def read_graph(path: str | Path) -> BicoloredGraph:
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return graph_from_json(json.loads(text))
    return graph_from_text(text)


def graph_digest(g: BicoloredGraph) -> str:
    """Short stable digest used to tie formulas back to their graph."""
    return hashlib.sha256(graph_to_text(g).encode()).hexdigest()[:16]


def write_sidecar(
    path: str | Path,
    spec: ColoringFamily | None = None,
    symmetric_sets: list[list[int]] | None = None,
    extra: dict | None = None,
) -> Path:
    """Write ``<path>.meta.json`` next to a graph file."""
    meta: dict = dict(extra or {})
    if spec is not None:
        meta["spec"] = spec_to_json(spec)
    if symmetric_sets:
        meta["symmetric_sets"] = [list(s) for s in symmetric_sets]
    out = Path(str(path) + ".meta.json")
    out.write_text(json.dumps(meta, indent=1) + "\n", encoding="utf-8")
    return out


def read_sidecar(graph_path: str | Path) -> dict:
    path = Path(str(graph_path) + ".meta.json")
    if not path.exists():
        return {}
    return json.loads(path.read_text(encoding="utf-8"))


def sidecar_spec(meta: dict) -> ColoringFamily | None:
    if "spec" in meta:
        return spec_from_json(meta["spec"])
    return None
