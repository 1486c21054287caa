"""Exhaustive ground-truth checks, deliberately slow and hard-capped.

Every decision the toolkit makes has a brute-force twin here.  The caps
raise instead of degrading, so an oracle can never silently stand in for
a production path.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterator

from .colorings import ColoringFamily, enumerate_colorings, family_size
from .graph import (
    BicoloredGraph,
    VertexColoring,
    count_odd_components,
    induced_graph,
    vertex_deleted_subgraph,
)
from .matching import Decision

PM_VERTEX_CAP = 12
FORALL_COLORING_CAP = 10_000
TUTTE_VERTEX_CAP = 12


class OracleCapError(Exception):
    """Input too large for an exhaustive check."""


def _check_cap(value: int, cap: int, what: str) -> None:
    if value > cap:
        raise OracleCapError(f"{what} {value} exceeds the oracle cap {cap}")


def brute_pm(g: BicoloredGraph) -> bool:
    """Perfect-matching existence by recursive vertex pairing."""
    _check_cap(g.n, PM_VERTEX_CAP, "vertex count")
    for _ in enumerate_perfect_matchings(g):
        return True
    return False


def enumerate_perfect_matchings(g: BicoloredGraph) -> Iterator[tuple[int, ...]]:
    """All perfect matchings as sorted tuples of edge indices."""
    _check_cap(g.n, PM_VERTEX_CAP, "vertex count")
    active = list(g.vertices)
    if len(active) % 2 == 1:
        return
    by_vertex: dict[int, list[int]] = {v: [] for v in active}
    for i, e in enumerate(g.edges):
        by_vertex[e.u].append(i)

    def extend(remaining: frozenset[int], chosen: list[int]) -> Iterator[tuple[int, ...]]:
        if not remaining:
            yield tuple(sorted(chosen))
            return
        v = min(remaining)
        for i in by_vertex[v]:
            other = g.edges[i].v
            if other in remaining and other != v:
                chosen.append(i)
                yield from extend(remaining - {v, other}, chosen)
                chosen.pop()

    yield from extend(frozenset(active), [])


def inherited_coloring(g: BicoloredGraph, pm_edge_indices: tuple[int, ...]) -> VertexColoring:
    """Coloring each matched vertex takes from its edge's endpoint color."""
    colors = [0] * g.n
    for i in pm_edge_indices:
        e = g.edges[i]
        colors[e.u - 1] = e.cu
        colors[e.v - 1] = e.cv
    if any(c == 0 for c in colors):
        raise ValueError("edge set is not a perfect matching")
    return tuple(colors)


def brute_forall_pmvc(g: BicoloredGraph, spec: ColoringFamily) -> Decision:
    """Enumerate the legal colorings; for each one, reduce to plain
    perfect matching on the induced graph and search exhaustively."""
    _check_cap(g.n, PM_VERTEX_CAP, "vertex count")
    _check_cap(family_size(spec, g.n), FORALL_COLORING_CAP, "coloring family size")
    for coloring in enumerate_colorings(spec, g.n, cap=FORALL_COLORING_CAP):
        if not brute_pm(induced_graph(g, coloring)):
            return Decision(satisfies=False, witness_coloring=coloring)
    return Decision(satisfies=True)


def brute_tutte_set(g: BicoloredGraph) -> frozenset[int] | None:
    """First vertex set S (by size, then lexicographically) leaving more
    odd components behind than |S|, or None if no such set exists."""
    _check_cap(g.n, TUTTE_VERTEX_CAP, "vertex count")
    verts = g.vertices
    for size in range(0, len(verts) + 1):
        for subset in itertools.combinations(verts, size):
            s = frozenset(subset)
            if count_odd_components(vertex_deleted_subgraph(g, s)) > len(s):
                return s
    return None


def brute_max_matching_size(g: BicoloredGraph) -> int:
    """Maximum matching cardinality by exhaustive pairing."""
    _check_cap(g.n, PM_VERTEX_CAP, "vertex count")
    pairs = sorted({(e.u, e.v) for e in g.edges})

    def best(remaining: list[tuple[int, int]], used: set[int]) -> int:
        score = 0
        for idx, (u, v) in enumerate(remaining):
            if u in used or v in used:
                continue
            used.update((u, v))
            score = max(score, 1 + best(remaining[idx + 1:], used))
            used.difference_update((u, v))
        return score

    return best(pairs, set())
