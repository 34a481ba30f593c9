import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import tree_rich, twin_rich
from spcindex.graph import from_edges, generate_random
from spcindex.oracle import bfs_count
from spcindex.reduction import (ADJACENT, NONADJACENT, SINGLETON, map_endpoint, one_shell,
                                reduce_graph, tree_distance, twin_reduce)


def test_one_shell_peels_pendant_path():
    # triangle 0-1-2 with the path 2-3-4 hanging off vertex 2
    g = from_edges(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4)])
    core, cf, core_ids = one_shell(g)
    assert core_ids.tolist() == [0, 1, 2]
    assert core.num_edges == 3
    assert cf.anchor.tolist() == [0, 1, 2, 2, 2]
    assert cf.depth.tolist() == [0, 0, 0, 1, 2]
    assert tree_distance(cf, 4, 2) == 2
    assert tree_distance(cf, 3, 4) == 1


def test_tree_only_component_rooted_at_smallest():
    g = from_edges(6, [(0, 1), (1, 2), (0, 2), (5, 4), (4, 3)])
    _, cf, core_ids = one_shell(g)
    assert core_ids.tolist() == [0, 1, 2]
    assert cf.anchor[3:].tolist() == [3, 3, 3]
    assert tree_distance(cf, 3, 5) == 2
    with pytest.raises(ValueError):
        tree_distance(cf, 0, 5)


def test_tree_distance_through_common_ancestor():
    # star-like tree hanging from a square
    g = from_edges(8, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (4, 5), (4, 6), (6, 7)])
    _, cf, _ = one_shell(g)
    assert tree_distance(cf, 5, 7) == 3


def test_twins_on_biclique():
    # K_{2,3}: {0,1} and {2,3,4} are non-adjacent twin classes
    g = from_edges(5, [(a, b) for a in (0, 1) for b in (2, 3, 4)])
    rg, tc = twin_reduce(g)
    assert tc.rep.tolist() == [0, 0, 2, 2, 2]
    assert tc.kind.tolist() == [NONADJACENT] * 5
    assert rg.graph.num_vertices == 2
    assert rg.vertex_weight.tolist() == [2, 3]


def test_twins_on_clique():
    g = from_edges(4, [(a, b) for a in range(4) for b in range(a + 1, 4)])
    rg, tc = twin_reduce(g)
    assert tc.kind.tolist() == [ADJACENT] * 4
    assert rg.graph.num_vertices == 1
    assert rg.vertex_weight.tolist() == [4]


def test_no_twins_on_path():
    g = from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4)])
    rg, tc = twin_reduce(g)
    assert tc.rep.tolist() == list(range(5))
    assert tc.kind.tolist() == [SINGLETON] * 5
    assert rg.graph == g


def test_path_endpoints_are_twins():
    g = from_edges(3, [(0, 1), (1, 2)])
    _, tc = twin_reduce(g)
    assert tc.rep.tolist() == [0, 1, 0]
    assert tc.weight.tolist() == [2, 1, 0]


def test_reduce_none_is_identity(sample):
    reduced, maps = reduce_graph(sample, "none")
    assert reduced.num_vertices == sample.num_vertices
    assert maps.is_trivial
    assert maps.reduced_id.tolist() == list(range(10))


def test_reduce_rejects_unknown_mode(sample):
    with pytest.raises(ValueError):
        reduce_graph(sample, "all")


def test_map_endpoint_range(sample):
    _, maps = reduce_graph(sample, "both")
    with pytest.raises(IndexError):
        map_endpoint(maps, 10)


@pytest.mark.parametrize("seed", range(6))
def test_weighted_counts_preserved_by_twins(seed):
    """Weighted BFS on the collapsed graph reproduces counts between representatives."""
    g = twin_rich(seed)
    rg, tc = twin_reduce(g)
    origin = rg.origin.tolist()
    for s_red, s in enumerate(origin):
        full = bfs_count(g, s)
        red = bfs_count(rg.graph, s_red, rg.vertex_weight)
        for t_red, t in enumerate(origin):
            assert (red.dist[t_red], red.sigma[t_red]) == (full.dist[t], full.sigma[t])


@pytest.mark.parametrize("seed", range(6))
def test_shell_preserves_core_counts(seed):
    g = tree_rich(seed)
    core, cf, core_ids = one_shell(g)
    ids = core_ids.tolist()
    for i, s in enumerate(ids):
        full = bfs_count(g, s)
        red = bfs_count(core, i)
        assert [full.dist[t] for t in ids] == red.dist
        assert [full.sigma[t] for t in ids] == red.sigma


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 30), st.floats(0.3, 3.0), st.integers(0, 10_000), st.sampled_from(["shell", "twin", "both"]))
def test_reduction_maps_consistent(n, ef, seed, mode):
    g = generate_random(n, ef, seed)
    reduced, maps = reduce_graph(g, mode)
    reduced.validate()
    assert maps.num_original == n
    assert maps.num_reduced == reduced.num_vertices
    # every indexed vertex maps back to itself
    assert np.array_equal(maps.reduced_id[maps.origin], np.arange(reduced.num_vertices))
    # weights account for every core vertex exactly once
    assert int(maps.vertex_weight.sum()) == int(maps.cf.in_core.sum())
    for v in range(n):
        if maps.cf.in_core[v]:
            assert maps.cf.depth[v] == 0
            assert maps.reduced_id[v] >= 0
        elif maps.cf.anchor[v] != v:
            assert maps.cf.depth[v] >= 1
        else:
            # root of a tree-only component
            assert maps.reduced_id[v] == -1
