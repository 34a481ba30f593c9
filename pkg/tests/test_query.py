import pytest
from hypothesis import given, settings, strategies as st

from conftest import SAMPLE_ORDER, layered_gadget, tree_rich, twin_rich
from spcindex.errors import CountOverflowError
from spcindex.graph import from_edges, generate_random
from spcindex.index import build_index
from spcindex.oracle import all_pairs_oracle
from spcindex.query import NO_PATH, BatchQueryError, QueryResult, batch_query, spc_query
from spcindex.reduction import NONADJACENT


def all_pairs(idx, n):
    return [[tuple(spc_query(idx, s, t)) for t in range(n)] for s in range(n)]


@pytest.fixture
def sample_index(sample):
    return build_index(sample, SAMPLE_ORDER, builder="seq")


def test_example_query(sample_index):
    v10, v7 = sample_index.vertex_of(10), sample_index.vertex_of(7)
    assert spc_query(sample_index, v10, v7) == (3, 4)
    assert spc_query(sample_index, v7, v10) == (3, 4)


def test_same_vertex(sample_index):
    assert spc_query(sample_index, 4, 4) == (0, 1)
    assert str(spc_query(sample_index, 4, 4)) == "0 1"


def test_unreachable_prints_inf():
    g = from_edges(4, [(0, 1), (2, 3)])
    idx = build_index(g)
    assert spc_query(idx, 0, 3) == NO_PATH
    assert str(spc_query(idx, 0, 3)) == "INF 0"
    assert not NO_PATH.reachable


def test_out_of_range(sample_index):
    with pytest.raises(IndexError):
        spc_query(sample_index, 0, 10)


@pytest.mark.parametrize("mode", ["none", "shell", "twin", "both"])
def test_sample_all_reductions(sample, mode):
    idx = build_index(sample, reduce=mode)
    assert all_pairs(idx, 10) == all_pairs_oracle(sample)


@pytest.mark.parametrize("mode", ["none", "shell", "twin", "both"])
@pytest.mark.parametrize("seed", range(8))
def test_twin_rich(seed, mode):
    g = twin_rich(seed)
    idx = build_index(g, reduce=mode, builder="seq" if seed % 2 else "pspc")
    assert all_pairs(idx, g.num_vertices) == all_pairs_oracle(g)


@pytest.mark.parametrize("mode", ["none", "shell", "twin", "both"])
@pytest.mark.parametrize("seed", range(8))
def test_tree_rich(seed, mode):
    g = tree_rich(seed)
    idx = build_index(g, reduce=mode)
    assert all_pairs(idx, g.num_vertices) == all_pairs_oracle(g)


def test_nonadjacent_twins_without_common_neighbour():
    # isolated vertices share the empty neighbourhood, so they collapse into
    # one twin class that has no common neighbour to route through
    g = from_edges(5, [(0, 1), (1, 2), (2, 0)])
    idx = build_index(g, reduce="twin")
    assert idx.maps.tc.kind[3] == NONADJACENT
    assert spc_query(idx, 3, 4) == NO_PATH
    assert spc_query(idx, 0, 1) == (1, 1)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 30), st.floats(0.3, 3.0), st.integers(0, 10_000),
       st.sampled_from(["none", "shell", "twin", "both"]), st.sampled_from(["degree", "elim", "hybrid"]))
def test_matches_oracle(n, ef, seed, mode, order):
    g = generate_random(n, ef, seed)
    idx = build_index(g, order, reduce=mode)
    assert all_pairs(idx, n) == all_pairs_oracle(g)


def test_batch_preserves_order(sample_index):
    pairs = [(s, t) for s in range(10) for t in range(10)] * 4
    expect = [spc_query(sample_index, s, t) for s, t in pairs]
    assert batch_query(sample_index, pairs) == expect
    assert batch_query(sample_index, pairs, workers=4) == expect
    assert batch_query(sample_index, []) == []


def test_batch_reports_failing_pair(sample_index):
    pairs = [(0, 1)] * 300 + [(0, 99)]
    with pytest.raises(BatchQueryError) as exc:
        batch_query(sample_index, pairs, workers=2)
    assert exc.value.index == 300
    assert exc.value.pair == (0, 99)
    with pytest.raises(ValueError):
        batch_query(sample_index, pairs, workers=0)


def test_query_overflow():
    g = layered_gadget(width=3, layers=41)
    idx = build_index(g, "degree", builder="pspc")
    with pytest.raises(CountOverflowError):
        spc_query(idx, 0, g.num_vertices - 1)
    # a short hop inside the gadget is still fine
    assert spc_query(idx, 0, 1) == QueryResult(1, 1)
