"""Maximum matching on general graphs and the enumerate-and-match decider.

The matcher is Edmonds' blossom-contraction algorithm in its O(V^3) form:
repeated BFS for an augmenting path from each exposed vertex, contracting
odd cycles on the fly via a ``base`` array.  Parallel edges collapse to
simple adjacency first; matching existence never depends on multiplicity.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass

from .colorings import ColoringFamily, enumerate_colorings, family_size, DEFAULT_ENUM_CAP
from .graph import BicoloredGraph, VertexColoring, induced_graph

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Matching:
    """A set of vertex-disjoint matched pairs (1-based vertex ids)."""

    pairs: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        seen: set[int] = set()
        for u, v in self.pairs:
            if u in seen or v in seen or u == v:
                raise ValueError("matching pairs are not vertex-disjoint")
            seen.update((u, v))

    @property
    def size(self) -> int:
        return len(self.pairs)

    def covered(self) -> set[int]:
        return {x for pair in self.pairs for x in pair}


@dataclass(frozen=True)
class Decision:
    """Outcome of a matching-for-every-coloring query."""

    satisfies: bool
    witness_coloring: VertexColoring | None = None

    def __bool__(self) -> bool:
        return self.satisfies


def max_matching(g: BicoloredGraph) -> Matching:
    """Maximum-cardinality matching of the underlying uncolored graph."""
    verts = g.vertices
    index = {v: i for i, v in enumerate(verts)}
    n = len(verts)
    adj: list[list[int]] = [[] for _ in range(n)]
    seen_pairs: set[tuple[int, int]] = set()
    for e in g.edges:
        key = (index[e.u], index[e.v])
        if key not in seen_pairs:
            seen_pairs.add(key)
            adj[key[0]].append(key[1])
            adj[key[1]].append(key[0])

    match = [-1] * n
    for root in range(n):
        if match[root] == -1:
            _augment_from(n, adj, match, root)

    pairs = frozenset(
        (verts[i], verts[match[i]]) for i in range(n) if match[i] > i
    )
    return Matching(pairs)


def _augment_from(n: int, adj: list[list[int]], match: list[int], root: int) -> bool:
    """One BFS phase: find and apply an augmenting path from ``root``."""
    parent = [-1] * n
    base = list(range(n))
    in_queue = [False] * n
    in_queue[root] = True
    queue = deque([root])

    def lca(a: int, b: int) -> int:
        marked = [False] * n
        while True:
            a = base[a]
            marked[a] = True
            if match[a] == -1:
                break
            a = parent[match[a]]
        while True:
            b = base[b]
            if marked[b]:
                return b
            b = parent[match[b]]

    def mark_path(v: int, stem: int, child: int, in_blossom: list[bool]) -> None:
        while base[v] != stem:
            in_blossom[base[v]] = True
            in_blossom[base[match[v]]] = True
            parent[v] = child
            child = match[v]
            v = parent[match[v]]

    while queue:
        v = queue.popleft()
        for to in adj[v]:
            if base[v] == base[to] or match[v] == to:
                continue
            if to == root or (match[to] != -1 and parent[match[to]] != -1):
                # Odd cycle: contract the blossom down to its stem.
                stem = lca(v, to)
                in_blossom = [False] * n
                mark_path(v, stem, to, in_blossom)
                mark_path(to, stem, v, in_blossom)
                for i in range(n):
                    if in_blossom[base[i]]:
                        base[i] = stem
                        if not in_queue[i]:
                            in_queue[i] = True
                            queue.append(i)
            elif parent[to] == -1:
                parent[to] = v
                if match[to] == -1:
                    # Exposed vertex reached: flip the path back to the root.
                    u = to
                    while u != -1:
                        pv = parent[u]
                        ppv = match[pv]
                        match[u] = pv
                        match[pv] = u
                        u = ppv
                    return True
                in_queue[match[to]] = True
                queue.append(match[to])
    return False


def has_perfect_matching(g: BicoloredGraph) -> bool:
    """True iff a matching covers every active vertex."""
    active = g.active_count
    if active % 2 == 1:
        return False
    return 2 * max_matching(g).size == active


def enum_blossom(
    g: BicoloredGraph,
    spec: ColoringFamily,
    shuffle_seed: int | None = None,
    cap: int = DEFAULT_ENUM_CAP,
) -> Decision:
    """Check every legal coloring's induced graph for a perfect matching.

    Returns the first coloring whose induced graph has none; the
    enumeration order is lexicographic, or a seeded permutation when
    ``shuffle_seed`` is given.  Raises EnumerationCapError for families
    above ``cap``.
    """
    size = family_size(spec, g.n)
    log.debug("enumerate-and-match over %d colorings, |E|=%d, |V|=%d "
              "(work bound ~ %d)", size, len(g.edges), g.n,
              size * max(1, len(g.edges)) * g.n * g.n)
    for coloring in enumerate_colorings(spec, g.n, shuffle_seed=shuffle_seed, cap=cap):
        if not has_perfect_matching(induced_graph(g, coloring)):
            return Decision(satisfies=False, witness_coloring=coloring)
    return Decision(satisfies=True)
