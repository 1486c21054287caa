"""Benchmark graph generators and the seeded refutation mutations.

The two-partition construction for Dicke-style instances: vertices 1..k
form V1 and k+1..n form V2; every V1-V2 pair gets a red-blue and a
blue-red edge, and every pair inside V2 gets a blue edge.  Removing one
of the (V1=blue, V2=red) bicolored edges is guaranteed to break the
matching property, which drives the mutation benchmarks.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .graph import BLUE, RED, BicoloredGraph, Edge


def gen_dicke_graph(n: int, k: int) -> BicoloredGraph:
    """Sparse two-color graph with perfect matchings for exactly the
    colorings that mark k vertices red."""
    if n % 2 != 0:
        raise ValueError(f"vertex count must be even, got {n}")
    if not 1 <= k <= n // 2:
        raise ValueError(f"need 1 <= k <= n/2, got k={k}, n={n}")
    edges: list[Edge] = []
    v1 = range(1, k + 1)
    v2 = range(k + 1, n + 1)
    for u in v1:
        for v in v2:
            edges.append(Edge(u=u, v=v, cu=RED, cv=BLUE))
            edges.append(Edge(u=u, v=v, cu=BLUE, cv=RED))
    for u in v2:
        for v in v2:
            if u < v:
                edges.append(Edge(u=u, v=v, cu=BLUE, cv=BLUE))
    return BicoloredGraph(n, 2, tuple(edges))


def dicke_graph_partitions(n: int, k: int) -> tuple[list[int], list[int]]:
    """The two interchangeable vertex sets of gen_dicke_graph(n, k)."""
    return list(range(1, k + 1)), list(range(k + 1, n + 1))


def required_bicolored_edges(g: BicoloredGraph, k: int) -> list[int]:
    """Indices of the blue-red edges (V1 endpoint blue, V2 endpoint red)
    whose individual removal breaks the matching property."""
    out = []
    for i, e in enumerate(g.edges):
        in_v1, in_v2 = e.u <= k, e.v > k
        if in_v1 and in_v2 and e.cu == BLUE and e.cv == RED:
            out.append(i)
    return out


def gen_complete_bipartite(a: int, b: int) -> BicoloredGraph:
    """Uncolored complete bipartite graph K_{a,b}, modeled with d=1.

    Vertices 1..a form the first partition, a+1..a+b the second.
    """
    if a < 1 or b < 1:
        raise ValueError("both partition sizes must be at least 1")
    edges = tuple(
        Edge(u=u, v=v, cu=1, cv=1)
        for u in range(1, a + 1)
        for v in range(a + 1, a + b + 1)
    )
    return BicoloredGraph(a + b, 1, edges)


@dataclass(frozen=True)
class MutationMode:
    """Either remove a fraction of the blue edges or a fixed number of
    bicolored edges."""

    kind: str  # "blue-fraction" | "bicolored"
    fraction: float | None = None
    count: int | None = None

    def __post_init__(self) -> None:
        if self.kind == "blue-fraction":
            if self.fraction is None or not 0 < self.fraction <= 1:
                raise ValueError("blue-fraction needs 0 < p <= 1")
        elif self.kind == "bicolored":
            if self.count is None or self.count < 1:
                raise ValueError("bicolored needs a positive removal count")
        else:
            raise ValueError(f"unknown mutation mode {self.kind!r}")


def remove_blue_fraction(p: float) -> MutationMode:
    return MutationMode("blue-fraction", fraction=p)


def remove_bicolored(m: int) -> MutationMode:
    return MutationMode("bicolored", count=m)


def parse_mutation_mode(text: str) -> MutationMode:
    """Parse CLI syntax ``blue:0.4`` or ``bicolored:2``."""
    head, _, arg = text.partition(":")
    head = head.lower()
    if head in ("blue", "blue-fraction"):
        return remove_blue_fraction(float(arg))
    if head == "bicolored":
        return remove_bicolored(int(arg))
    raise ValueError(f"cannot parse mutation mode {text!r}")


def refutation_mutate(g: BicoloredGraph, mode: MutationMode, seed: int) -> BicoloredGraph:
    """Remove edges uniformly at random, deterministically under the seed."""
    rng = random.Random(seed)
    if mode.kind == "blue-fraction":
        candidates = [i for i, e in enumerate(g.edges) if e.monochromatic and e.cu == BLUE]
        assert mode.fraction is not None
        want = math.ceil(mode.fraction * len(candidates))
    else:
        candidates = [i for i, e in enumerate(g.edges) if e.bicolored]
        assert mode.count is not None
        want = mode.count
    if want > len(candidates):
        raise ValueError(
            f"cannot remove {want} edges, only {len(candidates)} candidates available"
        )
    drop = set(rng.sample(candidates, want))
    kept = tuple(e for i, e in enumerate(g.edges) if i not in drop)
    return BicoloredGraph(g.n, g.d, kept)
