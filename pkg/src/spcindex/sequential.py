"""Sequential label construction by pruned counting BFS in rank order."""

from __future__ import annotations

from collections import deque

import numpy as np

from .errors import COUNT_MAX, CountOverflowError
from .graph import Graph
from .labels import SpcIndex, VertexLabels
from .ordering import VertexOrder
from .reduction import ReductionMaps, reduce_graph


def _prune_distance(lab_w: dict, lab_x: dict, limit: int) -> bool:
    """True when some shared hub gives a distance below ``limit``."""
    if len(lab_x) > len(lab_w):
        lab_w, lab_x = lab_x, lab_w
    for h, dx in lab_x.items():
        dw = lab_w.get(h)
        if dw is not None and dw + dx < limit:
            return True
    return False


def sequential_labels(g: Graph, order: VertexOrder, vertex_weight=None) -> list[VertexLabels]:
    n = g.num_vertices
    if len(order) != n:
        raise ValueError("order does not cover the graph")
    adj = g.adj
    rank = order.rank_of.tolist()
    weight = None
    if vertex_weight is not None and np.any(np.asarray(vertex_weight) != 1):
        weight = [int(x) for x in vertex_weight]

    dist_of: list[dict[int, int]] = [{} for _ in range(n)]
    entries: list[list[tuple[int, int, int]]] = [[] for _ in range(n)]
    dist = [-1] * n
    sigma = [0] * n
    for i, w in enumerate(order.vertex_at.tolist()):
        lab_w = dist_of[w]
        dist[w], sigma[w] = 0, 1
        touched = [w]
        queue = deque([w])
        while queue:
            x = queue.popleft()
            dx = dist[x]
            if x != w and _prune_distance(lab_w, dist_of[x], dx):
                continue
            s = sigma[x]
            if s > COUNT_MAX:
                raise CountOverflowError((w, x), "pruned BFS")
            entries[x].append((i, dx, s))
            if x != w:
                dist_of[x][i] = dx
                if weight is not None:
                    s *= weight[x]
            for y in adj[x]:
                if rank[y] <= i:
                    continue
                dy = dist[y]
                if dy < 0:
                    dist[y] = dx + 1
                    sigma[y] = s
                    touched.append(y)
                    queue.append(y)
                elif dy == dx + 1:
                    sigma[y] += s
        lab_w[i] = 0
        for x in touched:
            dist[x] = -1
            sigma[x] = 0
    return [VertexLabels.from_entries(e) for e in entries]


def build_sequential(g: Graph, order: VertexOrder, vertex_weight=None,
                     maps: ReductionMaps | None = None) -> SpcIndex:
    """Build the label index with one pruned BFS per vertex, highest rank first.

    A vertex reached at BFS distance ``d`` is labelled (and expanded) unless
    the labels built so far already certify a distance below ``d``; ties
    with existing labels are labelled as well.
    """
    if maps is None:
        _, maps = reduce_graph(g, "none")
        if vertex_weight is not None:
            maps = _with_weights(maps, g, vertex_weight)
    elif vertex_weight is None:
        vertex_weight = maps.vertex_weight
    labels = sequential_labels(g, order, vertex_weight)
    return SpcIndex(order, labels, maps, info={"builder": "seq"})


def _with_weights(maps: ReductionMaps, g: Graph, vertex_weight) -> ReductionMaps:
    w = np.asarray(vertex_weight, dtype=np.int64)
    nbr = [int(sum(w[x] for x in nbrs)) for nbrs in g.adj]
    return ReductionMaps(maps.mode, maps.cf, maps.tc, maps.reduced_id, w, maps.origin, nbr)
