"""Bicolored multigraphs and the elementary operations everything else builds on.

Vertices are 1..n, colors are 1..d.  Each edge carries one color per
endpoint; an edge is monochromatic when both agree.  Parallel edges are
allowed and kept distinct by their position in ``edges``; self-loops are
rejected.  Graphs are immutable after construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

VertexColoring = tuple[int, ...]

RED = 1
BLUE = 2

COLOR_NAMES = {1: "red", 2: "blue"}


@dataclass(frozen=True)
class Edge:
    """Undirected edge with per-endpoint colors, stored with u < v."""

    u: int
    v: int
    cu: int
    cv: int

    def __post_init__(self) -> None:
        if self.u == self.v:
            raise ValueError(f"self-loop on vertex {self.u}")
        if self.u > self.v:
            u, v, cu, cv = self.u, self.v, self.cu, self.cv
            object.__setattr__(self, "u", v)
            object.__setattr__(self, "v", u)
            object.__setattr__(self, "cu", cv)
            object.__setattr__(self, "cv", cu)

    @property
    def monochromatic(self) -> bool:
        return self.cu == self.cv

    @property
    def bicolored(self) -> bool:
        return self.cu != self.cv

    def endpoint_color(self, vertex: int) -> int:
        if vertex == self.u:
            return self.cu
        if vertex == self.v:
            return self.cv
        raise ValueError(f"vertex {vertex} not an endpoint of {self}")


@dataclass(frozen=True)
class BicoloredGraph:
    """Immutable bicolored multigraph.

    ``deleted`` marks vertices removed by :func:`vertex_deleted_subgraph`;
    original vertex ids are preserved so decoded witnesses stay meaningful.
    """

    n: int
    d: int
    edges: tuple[Edge, ...] = ()
    deleted: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        if self.d < 1:
            raise ValueError("color count must be at least 1")
        object.__setattr__(self, "edges", tuple(self.edges))
        object.__setattr__(self, "deleted", frozenset(self.deleted))
        for e in self.edges:
            if not (1 <= e.u <= self.n and 1 <= e.v <= self.n):
                raise ValueError(f"edge endpoint out of range 1..{self.n}: {e}")
            if not (1 <= e.cu <= self.d and 1 <= e.cv <= self.d):
                raise ValueError(f"edge color out of range 1..{self.d}: {e}")
            if e.u in self.deleted or e.v in self.deleted:
                raise ValueError(f"edge touches deleted vertex: {e}")
        for v in self.deleted:
            if not 1 <= v <= self.n:
                raise ValueError(f"deleted vertex out of range: {v}")

    @property
    def vertices(self) -> tuple[int, ...]:
        """Active (non-deleted) vertex ids."""
        if not self.deleted:
            return tuple(range(1, self.n + 1))
        return tuple(v for v in range(1, self.n + 1) if v not in self.deleted)

    @property
    def active_count(self) -> int:
        return self.n - len(self.deleted)

    def adjacency(self) -> dict[int, set[int]]:
        """Neighbor sets over active vertices, parallel edges collapsed."""
        adj: dict[int, set[int]] = {v: set() for v in self.vertices}
        for e in self.edges:
            adj[e.u].add(e.v)
            adj[e.v].add(e.u)
        return adj

    def incident_edge_indices(self) -> dict[int, list[int]]:
        """Edge indices incident to each active vertex."""
        inc: dict[int, list[int]] = {v: [] for v in self.vertices}
        for i, e in enumerate(self.edges):
            inc[e.u].append(i)
            inc[e.v].append(i)
        return inc


def make_graph(n: int, d: int, edge_tuples: list[tuple[int, int, int, int]]) -> BicoloredGraph:
    """Build a graph from (u, cu, v, cv) tuples."""
    return BicoloredGraph(n, d, tuple(Edge(u=u, v=v, cu=cu, cv=cv) for u, cu, v, cv in edge_tuples))


def count_color(coloring: VertexColoring, color: int) -> int:
    """Number of vertices with the given color."""
    return sum(1 for c in coloring if c == color)


def induced_graph(g: BicoloredGraph, coloring: VertexColoring) -> BicoloredGraph:
    """Keep only the edges whose endpoint colors agree with the coloring."""
    if len(coloring) != g.n:
        raise ValueError(f"coloring has length {len(coloring)}, expected {g.n}")
    kept = tuple(
        e for e in g.edges if e.cu == coloring[e.u - 1] and e.cv == coloring[e.v - 1]
    )
    return replace(g, edges=kept)


def vertex_deleted_subgraph(g: BicoloredGraph, removed: frozenset[int] | set[int]) -> BicoloredGraph:
    """Remove a vertex set and every edge touching it, keeping vertex ids."""
    removed = frozenset(removed)
    for v in removed:
        if not 1 <= v <= g.n:
            raise ValueError(f"vertex {v} out of range 1..{g.n}")
    kept = tuple(e for e in g.edges if e.u not in removed and e.v not in removed)
    return replace(g, edges=kept, deleted=g.deleted | removed)


def connected_components(g: BicoloredGraph) -> list[set[int]]:
    """Connected components over active vertices, edge colors ignored."""
    adj = g.adjacency()
    seen: set[int] = set()
    comps: list[set[int]] = []
    for start in g.vertices:
        if start in seen:
            continue
        comp = {start}
        stack = [start]
        seen.add(start)
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    comp.add(y)
                    stack.append(y)
        comps.append(comp)
    return comps


def count_odd_components(g: BicoloredGraph) -> int:
    """Number of connected components with an odd number of vertices."""
    return sum(1 for comp in connected_components(g) if len(comp) % 2 == 1)


def count_even_components(g: BicoloredGraph) -> int:
    return sum(1 for comp in connected_components(g) if len(comp) % 2 == 0)


def canonical_edge_key(e: Edge) -> tuple[int, int, int, int]:
    return (e.u, e.v, e.cu, e.cv)


def canonical_edge_multiset(g: BicoloredGraph) -> tuple[tuple[int, int, int, int], ...]:
    """Edge multiset in a canonical order; equal iff the graphs have the
    same edges up to reordering."""
    return tuple(sorted(canonical_edge_key(e) for e in g.edges))


def permute_vertices(g: BicoloredGraph, mapping: dict[int, int]) -> BicoloredGraph:
    """Relabel vertices by a permutation given as old id -> new id.

    Vertices absent from the mapping stay fixed.  Endpoint colors travel
    with their endpoints.
    """
    def m(v: int) -> int:
        return mapping.get(v, v)

    if sorted(m(v) for v in range(1, g.n + 1)) != list(range(1, g.n + 1)):
        raise ValueError("mapping is not a permutation of 1..n")
    edges = tuple(Edge(u=m(e.u), v=m(e.v), cu=e.cu, cv=e.cv) for e in g.edges)
    return BicoloredGraph(g.n, g.d, edges, frozenset(m(v) for v in g.deleted))


def is_symmetric_vertex_set(g: BicoloredGraph, vertices: list[int]) -> bool:
    """Check that swapping any adjacent pair of the ordered list maps the
    graph onto itself (a cheap certificate that the set is interchangeable)."""
    if len(vertices) < 2 or len(set(vertices)) != len(vertices):
        return False
    if any(not 1 <= v <= g.n for v in vertices):
        return False
    base = canonical_edge_multiset(g)
    for a, b in zip(vertices, vertices[1:]):
        swapped = permute_vertices(g, {a: b, b: a})
        if canonical_edge_multiset(swapped) != base:
            return False
    return True
