import itertools

import pytest

from pmvc import colorings as col
from pmvc.generators import gen_complete_bipartite, gen_dicke_graph
from pmvc.graph import BicoloredGraph, make_graph
from pmvc.matching import has_perfect_matching
from pmvc.oracle import (
    OracleCapError,
    brute_forall_pmvc,
    brute_pm,
    brute_tutte_set,
    enumerate_perfect_matchings,
    inherited_coloring,
)

from conftest import random_graph


def test_brute_pm_examples():
    k4 = make_graph(4, 1, [(u, 1, v, 1) for u, v in itertools.combinations(range(1, 5), 2)])
    assert brute_pm(k4)
    star = make_graph(4, 1, [(1, 1, 2, 1), (1, 1, 3, 1), (1, 1, 4, 1)])
    assert not brute_pm(star)


def test_brute_pm_agrees_with_blossom(rng):
    for _ in range(500):
        g = random_graph(rng, rng.randint(1, 10), 1, extra_parallel=False)
        assert brute_pm(g) == has_perfect_matching(g)


def test_guards_refuse_large_inputs():
    big = make_graph(13, 1, [])
    with pytest.raises(OracleCapError):
        brute_pm(big)
    with pytest.raises(OracleCapError):
        brute_tutte_set(big)
    with pytest.raises(OracleCapError):
        brute_forall_pmvc(make_graph(4, 2, []), col.explicit(
            [tuple(c) for c in itertools.product((1, 2), repeat=4)] * 700))


def test_brute_forall_examples():
    assert brute_forall_pmvc(gen_dicke_graph(6, 2), col.dicke(2)).satisfies
    empty = make_graph(2, 2, [])
    decision = brute_forall_pmvc(empty, col.ghz(2))
    assert not decision.satisfies
    assert decision.witness_coloring == (1, 1)


def test_brute_tutte_set_examples():
    assert brute_tutte_set(gen_complete_bipartite(2, 4)) == frozenset({1, 2})
    c6 = make_graph(6, 1, [(i, 1, i % 6 + 1, 1) for i in range(1, 7)])
    assert brute_tutte_set(c6) is None
    k3 = make_graph(3, 1, [(1, 1, 2, 1), (2, 1, 3, 1), (1, 1, 3, 1)])
    assert brute_tutte_set(k3) == frozenset()


def test_brute_tutte_set_order_smallest_then_lex():
    # two isolated vertices: the empty set already qualifies
    g = make_graph(2, 1, [])
    assert brute_tutte_set(g) == frozenset()
    # star: center {1} is the smallest non-empty set; empty set fails
    star = make_graph(4, 1, [(1, 1, 2, 1), (1, 1, 3, 1), (1, 1, 4, 1)])
    assert brute_tutte_set(star) == frozenset({1})


def test_tutte_theorem_executable(rng):
    for _ in range(150):
        g = random_graph(rng, rng.randint(1, 10), 1, extra_parallel=False)
        assert (brute_tutte_set(g) is None) == brute_pm(g)


def test_enumerate_perfect_matchings_counts_parallel_edges():
    g = make_graph(2, 2, [(1, 1, 2, 1), (1, 2, 2, 2)])
    pms = list(enumerate_perfect_matchings(g))
    assert len(pms) == 2
    colorings = {inherited_coloring(g, pm) for pm in pms}
    assert colorings == {(1, 1), (2, 2)}


def test_inherited_coloring_rejects_partial():
    g = make_graph(4, 1, [(1, 1, 2, 1), (3, 1, 4, 1)])
    with pytest.raises(ValueError):
        inherited_coloring(g, (0,))
