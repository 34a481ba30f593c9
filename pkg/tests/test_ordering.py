import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from spcindex.graph import from_edges, generate_random
from spcindex.ordering import (VertexOrder, _elimination_sequence, degree_order, elimination_order,
                               hybrid_order, make_order, order_from_external)


def star(k):
    return from_edges(k + 1, [(0, i) for i in range(1, k + 1)])


def test_degree_order_ties_to_smaller_id():
    g = from_edges(5, [(0, 1), (2, 3), (3, 4), (2, 4), (1, 3)])
    # degrees: 1,2,2,3,2
    assert degree_order(g).vertex_at.tolist() == [3, 1, 2, 4, 0]


def test_sample_degree_order(sample):
    va = degree_order(sample).vertex_at.tolist()
    assert [sample.external_id(v) for v in va[:2]] == [1, 7]


def test_rank_and_vertex_are_inverse():
    o = VertexOrder.from_vertex_at([2, 0, 1])
    assert o.rank_of.tolist() == [1, 2, 0]
    with pytest.raises(ValueError):
        VertexOrder(np.array([0, 0, 1]), np.array([0, 1, 2]))


def test_elimination_peels_leaves_first():
    # path 0-1-2-3-4: endpoints are removed before interior vertices
    g = from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4)])
    seq = _elimination_sequence(g.adj)
    assert set(seq[:2]) == {0, 4}
    assert elimination_order(g).vertex_at.tolist() == seq[::-1]


def test_elimination_star_centre_last():
    assert elimination_order(star(6)).vertex_at[0] == 0


def test_elimination_adds_fill_clique():
    # eliminating the degree-2 vertex 0 of a 4-cycle joins 1 and 3
    g = from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    seq = _elimination_sequence(g.adj)
    assert seq[0] == 0
    assert sorted(seq) == [0, 1, 2, 3]


def test_hybrid_core_first():
    g = generate_random(80, 3.0, 4)
    deg = g.degrees
    o = hybrid_order(g, delta=5)
    va = o.vertex_at.tolist()
    core = [v for v in va if deg[v] > 5]
    assert va[:len(core)] == sorted(core, key=lambda v: (-deg[v], v))
    assert all(deg[v] <= 5 for v in va[len(core):])


def test_hybrid_extremes():
    g = generate_random(40, 2.0, 2)
    assert hybrid_order(g, delta=10 ** 6) == elimination_order(g)
    # delta below every degree degenerates to the degree order
    assert hybrid_order(g, delta=0).vertex_at[:5].tolist() == degree_order(g).vertex_at[:5].tolist()
    with pytest.raises(ValueError):
        hybrid_order(g, delta=-1)


def test_order_from_external(sample):
    o = order_from_external(sample, [1, 7, 4, 10, 3, 5, 6, 2, 8, 9])
    assert [sample.external_id(v) for v in o.vertex_at.tolist()] == [1, 7, 4, 10, 3, 5, 6, 2, 8, 9]
    partial = order_from_external(sample, [9, 999])
    assert sample.external_id(int(partial.vertex_at[0])) == 9
    assert len(partial) == 10


def test_make_order_rejects_unknown(sample):
    with pytest.raises(ValueError):
        make_order(sample, "random")


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 40), st.floats(0.0, 4.0), st.integers(0, 10_000), st.sampled_from(["degree", "elim", "hybrid"]))
def test_orders_are_permutations(n, ef, seed, kind):
    g = generate_random(n, ef, seed)
    o = make_order(g, kind)
    assert sorted(o.vertex_at.tolist()) == list(range(n))
    assert np.array_equal(o.rank_of[o.vertex_at], np.arange(n))
    assert make_order(g, kind) == o
