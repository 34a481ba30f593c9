"""Brute-force reference answers.

Nothing here shares code with the label builders: every routine is a
plain breadth-first search so that agreement with the index is real
evidence.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import COUNT_MAX, CountOverflowError, OracleBoundError
from .graph import Graph

UNREACHABLE = -1
DEFAULT_BOUND = 256


@dataclass(frozen=True)
class SsspCount:
    source: int
    dist: list[int]
    sigma: list[int]


def bfs_count(g: Graph, s: int, vertex_weight=None) -> SsspCount:
    """Hop distance and number of shortest paths from ``s`` to every vertex.

    With ``vertex_weight``, a path's contribution is the product of the
    weights of its internal vertices.
    """
    n = g.num_vertices
    if not 0 <= s < n:
        raise IndexError(f"source {s} out of range")
    adj = g.adj
    dist = [UNREACHABLE] * n
    sigma = [0] * n
    dist[s], sigma[s] = 0, 1
    layer = [s]
    while layer:
        nxt = []
        for x in layer:
            for y in adj[x]:
                if dist[y] == UNREACHABLE:
                    dist[y] = dist[x] + 1
                    nxt.append(y)
        for y in nxt:
            total = 0
            for p in adj[y]:
                if dist[p] == dist[y] - 1:
                    f = 1 if (vertex_weight is None or p == s) else int(vertex_weight[p])
                    total += sigma[p] * f
            if total > COUNT_MAX:
                raise CountOverflowError((s, y), "oracle BFS")
            sigma[y] = total
        layer = nxt
    return SsspCount(s, dist, sigma)


def all_pairs_oracle(g: Graph, bound: int = DEFAULT_BOUND, vertex_weight=None) -> list[list[tuple[int, int]]]:
    """``table[s][t] = (dist, count)`` for every pair; ``(-1, 0)`` if unreachable."""
    n = g.num_vertices
    if n > bound:
        raise OracleBoundError(f"graph has {n} vertices, oracle bound is {bound}")
    table = []
    for s in range(n):
        r = bfs_count(g, s, vertex_weight)
        table.append(list(zip(r.dist, r.sigma)))
    return table


def trough_count_oracle(g: Graph, order, w: int, vertex_weight=None) -> list[int]:
    """Number of shortest ``w``–``u`` paths on which ``w`` is the highest-ranked vertex.

    Computed by counting shortest paths inside the subgraph induced by ``w``
    and the vertices ranked below it, keeping only targets whose distance
    there equals their distance in ``g``.
    """
    n = g.num_vertices
    rank = [int(r) for r in order.rank_of]
    rw = rank[w]
    keep = [rank[v] >= rw for v in range(n)]
    full = bfs_count(g, w).dist
    adj = [[y for y in g.adj[x] if keep[y]] if keep[x] else [] for x in range(n)]
    dist = [UNREACHABLE] * n
    sigma = [0] * n
    dist[w], sigma[w] = 0, 1
    queue = deque([w])
    order_seen = []
    while queue:
        x = queue.popleft()
        order_seen.append(x)
        for y in adj[x]:
            if dist[y] == UNREACHABLE:
                dist[y] = dist[x] + 1
                queue.append(y)
    for y in order_seen[1:]:
        sigma[y] = sum(
            sigma[p] * (1 if (vertex_weight is None or p == w) else int(vertex_weight[p]))
            for p in adj[y] if dist[p] == dist[y] - 1
        )
    return [sigma[u] if dist[u] != UNREACHABLE and dist[u] == full[u] else 0 for u in range(n)]


def oracle_query(g: Graph, s: int, t: int) -> tuple[int, int]:
    r = bfs_count(g, s)
    return r.dist[t], r.sigma[t]
