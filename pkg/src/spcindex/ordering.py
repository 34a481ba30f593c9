"""Total vertex orders that drive label construction.

Position 0 is the most important vertex. Every heuristic here breaks ties
by the smaller dense id.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

import numpy as np

from .graph import Graph, induced_subgraph

DEFAULT_DELTA = 5


@dataclass(frozen=True, eq=False)
class VertexOrder:
    rank_of: np.ndarray
    vertex_at: np.ndarray

    def __post_init__(self):
        for name in ("rank_of", "vertex_at"):
            arr = np.ascontiguousarray(getattr(self, name), dtype=np.int64)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        n = len(self.vertex_at)
        if len(self.rank_of) != n:
            raise ValueError("rank_of and vertex_at differ in length")
        if n and not np.array_equal(self.rank_of[self.vertex_at], np.arange(n)):
            raise ValueError("rank_of and vertex_at are not inverse bijections")

    @classmethod
    def from_vertex_at(cls, vertex_at) -> "VertexOrder":
        va = np.asarray(vertex_at, dtype=np.int64)
        n = len(va)
        if n and (va.min() < 0 or va.max() >= n or len(np.unique(va)) != n):
            raise ValueError("vertex_at is not a permutation")
        rank = np.empty(n, dtype=np.int64)
        rank[va] = np.arange(n)
        return cls(rank, va)

    def __len__(self):
        return len(self.vertex_at)

    def __eq__(self, other):
        if not isinstance(other, VertexOrder):
            return NotImplemented
        return np.array_equal(self.vertex_at, other.vertex_at)

    __hash__ = None

    def __repr__(self):
        head = self.vertex_at[:8].tolist()
        return f"VertexOrder({head}{'...' if len(self) > 8 else ''})"


def degree_order(g: Graph) -> VertexOrder:
    deg = g.degrees
    # lexsort: last key is primary
    va = np.lexsort((np.arange(g.num_vertices), -deg))
    return VertexOrder.from_vertex_at(va)


def _elimination_sequence(adj: list[list[int]]) -> list[int]:
    """Minimum-degree elimination; returns vertices in removal order.

    Neighbours of a removed vertex are joined into a clique. Degrees are then
    bumped with ``deg(u) + deg(u0) - 1`` rather than recounted.
    """
    n = len(adj)
    nbrs = [set(a) for a in adj]
    deg = [len(a) for a in adj]
    removed = [False] * n
    heap = [(deg[v], v) for v in range(n)]
    heapq.heapify(heap)
    seq = []
    while heap:
        d, u0 = heapq.heappop(heap)
        if removed[u0] or d != deg[u0]:
            continue
        removed[u0] = True
        seq.append(u0)
        around = nbrs[u0]
        for u in around:
            nbrs[u].discard(u0)
        ordered = sorted(around)
        for i, a in enumerate(ordered):
            na = nbrs[a]
            for b in ordered[i + 1:]:
                if b not in na:
                    na.add(b)
                    nbrs[b].add(a)
        for u in ordered:
            deg[u] = deg[u] + deg[u0] - 1
            heapq.heappush(heap, (deg[u], u))
        nbrs[u0] = set()
    return seq


def elimination_order(g: Graph) -> VertexOrder:
    """Tree-decomposition style order: last-eliminated vertex ranks first."""
    seq = _elimination_sequence(g.adj)
    return VertexOrder.from_vertex_at(seq[::-1])


def hybrid_order(g: Graph, delta: int = DEFAULT_DELTA) -> VertexOrder:
    """High-degree core by degree, the rest by elimination on the fringe.

    Vertices with degree > ``delta`` rank above all others.
    """
    if delta < 0:
        raise ValueError("delta must be non-negative")
    deg = g.degrees
    core = np.flatnonzero(deg > delta)
    fringe = np.flatnonzero(deg <= delta)
    core_sorted = core[np.lexsort((core, -deg[core]))]
    sub, old_ids = induced_subgraph(g, fringe)
    fringe_sorted = old_ids[elimination_order(sub).vertex_at]
    return VertexOrder.from_vertex_at(np.concatenate([core_sorted, fringe_sorted]))


def order_from_external(g: Graph, ids) -> VertexOrder:
    """Order from a list of external ids, most important first.

    Ids absent from ``g`` are skipped; vertices not listed are appended in
    degree order.
    """
    lookup = {g.external_id(v): v for v in range(g.num_vertices)}
    seen: set[int] = set()
    va = []
    for x in ids:
        v = lookup.get(int(x))
        if v is not None and v not in seen:
            seen.add(v)
            va.append(v)
    if len(va) < g.num_vertices:
        va.extend(v for v in degree_order(g).vertex_at.tolist() if v not in seen)
    return VertexOrder.from_vertex_at(va)


def make_order(g: Graph, kind: str, delta: int = DEFAULT_DELTA) -> VertexOrder:
    if kind == "degree":
        return degree_order(g)
    if kind == "elim":
        return elimination_order(g)
    if kind == "hybrid":
        return hybrid_order(g, delta)
    raise ValueError(f"unknown order kind {kind!r}")
