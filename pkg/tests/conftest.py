"""Shared fixture builders.

The "fixture corpus" is the seeded collection of small graphs x coloring
families used by the agreement suites: random bicolored graphs, the
two-partition generator family, and seeded mutants of it.
"""

from __future__ import annotations

import itertools
import random

import pytest

from pmvc import colorings as col
from pmvc.colorings import ColoringFamily, family_size
from pmvc.generators import (
    dicke_graph_partitions,
    gen_dicke_graph,
    refutation_mutate,
    remove_bicolored,
    remove_blue_fraction,
)
from pmvc.graph import BicoloredGraph, Edge, make_graph


def random_graph(rng: random.Random, n: int, d: int,
                 extra_parallel: bool = True) -> BicoloredGraph:
    """Random bicolored multigraph on n vertices with random density."""
    edges = []
    max_pairs = n * (n - 1) // 2
    m = rng.randint(0, max_pairs + (2 if extra_parallel else 0))
    for _ in range(m):
        if n < 2:
            break
        u = rng.randint(1, n - 1)
        v = rng.randint(u + 1, n)
        edges.append((u, rng.randint(1, d), v, rng.randint(1, d)))
    return make_graph(n, d, edges)


def random_connected_graph(rng: random.Random, n: int) -> BicoloredGraph:
    """Random connected uncolored graph (spanning tree plus extras)."""
    edges = []
    order = list(range(1, n + 1))
    rng.shuffle(order)
    for i in range(1, n):
        j = rng.randint(0, i - 1)
        u, v = sorted((order[i], order[j]))
        edges.append((u, 1, v, 1))
    extra = rng.randint(0, n)
    for _ in range(extra):
        if n < 2:
            break
        u = rng.randint(1, n - 1)
        v = rng.randint(u + 1, n)
        edges.append((u, 1, v, 1))
    return make_graph(n, 1, edges)


def specs_for(g: BicoloredGraph, rng: random.Random,
              coloring_cap: int = 70) -> list[ColoringFamily]:
    """Coloring families applicable to the graph, capped in size."""
    if g.d == 1:
        return [col.ghz(1)]
    out = [col.ghz(2)]
    if family_size(col.w_state(), g.n) <= coloring_cap:
        out.append(col.w_state())
    k = rng.randint(0, g.n)
    if family_size(col.dicke(k), g.n) <= coloring_cap:
        out.append(col.dicke(k))
    return out


def fixture_corpus(seed: int = 2024, random_count: int = 190) -> list[dict]:
    """>= 200 graphs with specs and any verified symmetric sets attached."""
    rng = random.Random(seed)
    corpus: list[dict] = []

    for n, k in [(4, 1), (4, 2), (6, 1), (6, 2), (6, 3)]:
        g = gen_dicke_graph(n, k)
        v1, v2 = dicke_graph_partitions(n, k)
        corpus.append({
            "label": f"gen-{n}-{k}",
            "graph": g,
            "specs": [col.dicke(k), col.ghz(2)],
            "symmetric_sets": [v1, v2],
        })
        for seed2, mode in [(0, remove_bicolored(1)), (1, remove_bicolored(2)),
                            (2, remove_blue_fraction(0.4))]:
            try:
                mutant = refutation_mutate(g, mode, seed2)
            except ValueError:
                continue
            corpus.append({
                "label": f"mut-{n}-{k}-{seed2}",
                "graph": mutant,
                "specs": [col.dicke(k)],
                "symmetric_sets": [],
            })

    while len(corpus) < random_count + 20:
        n = rng.choice([2, 3, 4, 5, 6])
        d = rng.choice([1, 2, 2])
        g = random_graph(rng, n, d)
        corpus.append({
            "label": f"rand-{len(corpus)}",
            "graph": g,
            "specs": specs_for(g, rng),
            "symmetric_sets": [],
        })
    return corpus


@pytest.fixture(scope="session")
def corpus() -> list[dict]:
    return fixture_corpus()


@pytest.fixture()
def rng() -> random.Random:
    return random.Random(1234)


def fig2_left_cycle() -> BicoloredGraph:
    """Six-cycle whose edges alternate solid colors, so both monochromatic
    colorings admit a perfect matching."""
    return make_graph(6, 2, [(1, 1, 2, 1), (2, 2, 3, 2), (3, 1, 4, 1),
                             (4, 2, 5, 2), (5, 1, 6, 1), (6, 2, 1, 2)])


def parallel_edge_demo() -> BicoloredGraph:
    """Four vertices with a doubled differently-colored edge, echoing the
    kind of multigraph the model must support."""
    return make_graph(4, 2, [(1, 1, 2, 1), (3, 1, 4, 1), (3, 2, 4, 1),
                             (1, 2, 3, 2), (2, 2, 4, 2)])
