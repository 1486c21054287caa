import pytest
from hypothesis import given, settings, strategies as st

from pmvc.graph import (
    BicoloredGraph,
    Edge,
    count_color,
    count_even_components,
    count_odd_components,
    connected_components,
    induced_graph,
    is_symmetric_vertex_set,
    make_graph,
    permute_vertices,
    vertex_deleted_subgraph,
)
from pmvc.generators import gen_complete_bipartite, gen_dicke_graph

from conftest import parallel_edge_demo, random_graph


def test_count_color_examples():
    assert count_color((1, 1, 2), 1) == 2
    assert count_color((2, 2, 2), 1) == 0


@given(st.lists(st.integers(min_value=1, max_value=3), min_size=1, max_size=12))
def test_count_color_partitions(colors):
    c = tuple(colors)
    assert sum(count_color(c, i) for i in range(1, 4)) == len(c)


def test_edge_canonical_order():
    e = Edge(u=5, v=2, cu=1, cv=2)
    assert (e.u, e.v, e.cu, e.cv) == (2, 5, 2, 1)
    assert e == Edge(u=2, v=5, cu=2, cv=1)
    assert e.endpoint_color(5) == 1


def test_edge_rejects_self_loop():
    with pytest.raises(ValueError, match="self-loop"):
        Edge(u=3, v=3, cu=1, cv=1)


def test_graph_validation():
    with pytest.raises(ValueError, match="out of range"):
        make_graph(2, 1, [(1, 1, 3, 1)])
    with pytest.raises(ValueError, match="color out of range"):
        make_graph(2, 1, [(1, 2, 2, 1)])
    with pytest.raises(ValueError):
        BicoloredGraph(2, 0, ())


def test_induced_graph_keeps_agreeing_edge():
    g = make_graph(2, 2, [(1, 1, 2, 2)])
    assert len(induced_graph(g, (1, 2)).edges) == 1
    assert len(induced_graph(g, (2, 2)).edges) == 0


def test_induced_graph_monochromatic_subgraph():
    g = parallel_edge_demo()
    red = induced_graph(g, (1, 1, 1, 1))
    # exactly the edges red at both ends survive, including one of the
    # parallel pair
    assert sorted((e.u, e.v) for e in red.edges) == [(1, 2), (3, 4)]
    assert all(e.cu == e.cv == 1 for e in red.edges)


def test_induced_graph_idempotent(rng):
    for _ in range(25):
        g = random_graph(rng, rng.randint(1, 6), 2)
        c = tuple(rng.randint(1, 2) for _ in range(g.n))
        once = induced_graph(g, c)
        assert induced_graph(once, c).edges == once.edges


def test_vertex_deleted_identity_and_empty():
    g = gen_dicke_graph(6, 2)
    assert vertex_deleted_subgraph(g, set()).edges == g.edges
    empty = vertex_deleted_subgraph(g, set(range(1, 7)))
    assert empty.edges == ()
    assert len(connected_components(empty)) == 0


def test_vertex_deleted_k810_isolates_second_partition():
    g = gen_complete_bipartite(8, 10)
    rest = vertex_deleted_subgraph(g, set(range(1, 9)))
    assert rest.edges == ()
    assert count_odd_components(rest) == 10


def test_count_odd_components_examples():
    isolated = make_graph(10, 1, [])
    assert count_odd_components(isolated) == 10
    one_edge = make_graph(2, 1, [(1, 1, 2, 1)])
    assert count_odd_components(one_edge) == 0
    path3_plus = make_graph(4, 1, [(1, 1, 2, 1), (2, 1, 3, 1)])
    assert count_odd_components(path3_plus) == 2


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_component_parity_invariant(data):
    n = data.draw(st.integers(min_value=1, max_value=8))
    pairs = [(u, v) for u in range(1, n) for v in range(u + 1, n + 1)]
    chosen = data.draw(st.lists(st.sampled_from(pairs), max_size=12)) if pairs else []
    g = make_graph(n, 1, [(u, 1, v, 1) for u, v in chosen])
    odd = count_odd_components(g)
    even = count_even_components(g)
    assert odd + even == len(connected_components(g))
    assert odd % 2 == g.n % 2


def test_permute_vertices_moves_colors_with_endpoints():
    g = make_graph(3, 2, [(1, 1, 2, 2)])
    swapped = permute_vertices(g, {1: 2, 2: 1})
    (e,) = swapped.edges
    assert (e.u, e.v, e.cu, e.cv) == (1, 2, 2, 1)
    with pytest.raises(ValueError, match="permutation"):
        permute_vertices(g, {1: 3})


def test_symmetric_vertex_sets():
    g = gen_dicke_graph(6, 2)
    assert is_symmetric_vertex_set(g, [1, 2])
    assert is_symmetric_vertex_set(g, [3, 4, 5, 6])
    assert not is_symmetric_vertex_set(g, [2, 3])
    assert not is_symmetric_vertex_set(g, [1])
    assert not is_symmetric_vertex_set(g, [1, 1])
    path = make_graph(3, 1, [(1, 1, 2, 1), (2, 1, 3, 1)])
    assert not is_symmetric_vertex_set(path, [1, 2])
    assert is_symmetric_vertex_set(path, [1, 3])  # the two leaves swap freely


def test_triangle_symmetric():
    k3 = make_graph(3, 1, [(1, 1, 2, 1), (2, 1, 3, 1), (1, 1, 3, 1)])
    assert is_symmetric_vertex_set(k3, [1, 2, 3])
