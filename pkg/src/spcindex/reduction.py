"""Graph reductions applied before indexing.

Two reductions are supported and always applied in this order:

1. 1-shell peeling: trees hanging off the 2-core are removed; each fringe
   vertex remembers the core vertex its tree hangs from (its *anchor*) and
   its depth below it.
2. Twin collapsing: vertices with identical open neighbourhoods
   (non-adjacent twins) or identical closed neighbourhoods (adjacent twins)
   are merged into their smallest-id member, which carries the class size
   as a vertex weight.

Counting on the reduced graph weights every *internal* path vertex by its
multiplicity, which keeps shortest-path counts exact.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .graph import Graph, induced_subgraph

SINGLETON, ADJACENT, NONADJACENT = 0, 1, 2
REDUCE_MODES = ("none", "shell", "twin", "both")


def _frozen(arr, dtype=np.int64) -> np.ndarray:
    a = np.ascontiguousarray(arr, dtype=dtype)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class CoreFringe:
    in_core: np.ndarray
    anchor: np.ndarray
    parent: np.ndarray
    depth: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "in_core", _frozen(self.in_core, np.bool_))
        for name in ("anchor", "parent", "depth"):
            object.__setattr__(self, name, _frozen(getattr(self, name)))

    @classmethod
    def trivial(cls, n: int) -> "CoreFringe":
        ids = np.arange(n)
        return cls(np.ones(n, dtype=bool), ids, ids, np.zeros(n, dtype=np.int64))

    def __eq__(self, other):
        if not isinstance(other, CoreFringe):
            return NotImplemented
        return all(np.array_equal(getattr(self, k), getattr(other, k))
                   for k in ("in_core", "anchor", "parent", "depth"))

    __hash__ = None


@dataclass(frozen=True, eq=False)
class TwinClasses:
    rep: np.ndarray
    weight: np.ndarray  # class size at the representative, 0 elsewhere
    kind: np.ndarray    # per vertex, kind of the class it belongs to

    def __post_init__(self):
        object.__setattr__(self, "rep", _frozen(self.rep))
        object.__setattr__(self, "weight", _frozen(self.weight))
        object.__setattr__(self, "kind", _frozen(self.kind, np.uint8))

    @classmethod
    def trivial(cls, n: int) -> "TwinClasses":
        return cls(np.arange(n), np.ones(n, dtype=np.int64), np.zeros(n, dtype=np.uint8))

    def __eq__(self, other):
        if not isinstance(other, TwinClasses):
            return NotImplemented
        return all(np.array_equal(getattr(self, k), getattr(other, k))
                   for k in ("rep", "weight", "kind"))

    __hash__ = None


@dataclass(frozen=True, eq=False)
class ReducedGraph:
    graph: Graph
    vertex_weight: np.ndarray
    origin: np.ndarray  # reduced id -> id in the graph that was reduced

    def __post_init__(self):
        object.__setattr__(self, "vertex_weight", _frozen(self.vertex_weight))
        object.__setattr__(self, "origin", _frozen(self.origin))


def one_shell(g: Graph) -> tuple[Graph, CoreFringe, np.ndarray]:
    """Peel the graph down to its 2-core.

    Returns the core graph (dense ids, ascending original id), the
    core/fringe maps over ``g``'s vertices, and the core→original id array.
    """
    n = g.num_vertices
    adj = g.adj
    deg = g.degrees.tolist()
    in_core = [True] * n
    queue = deque(v for v in range(n) if deg[v] < 2)
    for v in queue:
        in_core[v] = False
    while queue:
        v = queue.popleft()
        for u in adj[v]:
            if in_core[u]:
                deg[u] -= 1
                if deg[u] < 2:
                    in_core[u] = False
                    queue.append(u)

    anchor = list(range(n))
    parent = list(range(n))
    depth = [0] * n
    seen = list(in_core)

    def grow(root: int, start: list[int]) -> None:
        dq = deque()
        for s in start:
            seen[s] = True
            anchor[s], parent[s], depth[s] = root, root, 1
            dq.append(s)
        while dq:
            x = dq.popleft()
            for y in adj[x]:
                if not seen[y]:
                    seen[y] = True
                    anchor[y], parent[y], depth[y] = root, x, depth[x] + 1
                    dq.append(y)

    for c in range(n):
        if in_core[c]:
            fringe_nbrs = [y for y in adj[c] if not seen[y]]
            if fringe_nbrs:
                grow(c, fringe_nbrs)
    for r in range(n):
        if not seen[r]:
            # tree-only component, rooted at its smallest id
            seen[r] = True
            grow(r, [y for y in adj[r] if not seen[y]])

    core_ids = np.flatnonzero(np.array(in_core, dtype=bool))
    core, _ = induced_subgraph(g, core_ids)
    cf = CoreFringe(np.array(in_core, dtype=bool), anchor, parent, depth)
    return core, cf, core_ids


def tree_distance(cf: CoreFringe, s: int, t: int) -> int:
    """Hop distance between two vertices of the same fringe tree."""
    if cf.anchor[s] != cf.anchor[t]:
        raise ValueError(f"vertices {s} and {t} hang from different anchors")
    d = 0
    depth, parent = cf.depth, cf.parent
    while depth[s] > depth[t]:
        s = parent[s]
        d += 1
    while depth[t] > depth[s]:
        t = parent[t]
        d += 1
    while s != t:
        s, t = parent[s], parent[t]
        d += 2
    return int(d)


def twin_reduce(g: Graph) -> tuple[ReducedGraph, TwinClasses]:
    """Collapse neighbourhood-equivalent vertices into weighted representatives."""
    n = g.num_vertices
    adj = g.adj
    open_cls: dict[tuple, list[int]] = {}
    closed_cls: dict[tuple, list[int]] = {}
    for v in range(n):
        open_cls.setdefault(tuple(adj[v]), []).append(v)
        closed = sorted(adj[v] + [v])
        closed_cls.setdefault(tuple(closed), []).append(v)
    open_of = {}
    for members in open_cls.values():
        for v in members:
            open_of[v] = members
    rep = list(range(n))
    kind = [SINGLETON] * n
    for members in closed_cls.values():
        if len(members) < 2:
            continue
        # an overlapping open class is impossible for simple graphs; the
        # size rule only decides degenerate inputs
        if len(open_of[members[0]]) > len(members):
            continue
        for v in members:
            rep[v], kind[v] = members[0], ADJACENT
    for members in open_cls.values():
        if len(members) < 2:
            continue
        free = [v for v in members if kind[v] == SINGLETON]
        if len(free) < 2:
            continue
        for v in free:
            rep[v], kind[v] = free[0], NONADJACENT
    rep_arr = np.array(rep, dtype=np.int64)
    weight = np.bincount(rep_arr, minlength=n).astype(np.int64)
    reps = np.flatnonzero(rep_arr == np.arange(n))
    reduced, origin = induced_subgraph(g, reps)
    rg = ReducedGraph(reduced, weight[origin], origin)
    return rg, TwinClasses(rep_arr, weight, np.array(kind, dtype=np.uint8))


@dataclass(frozen=True, eq=False)
class ReductionMaps:
    """Everything a query needs to map original vertices onto the index.

    All per-vertex arrays of ``cf`` and ``tc`` are indexed by original id;
    twin representatives are original ids too. ``reduced_id`` maps an
    original vertex to its indexed vertex (-1 when it is not indexed).
    """

    mode: str
    cf: CoreFringe
    tc: TwinClasses
    reduced_id: np.ndarray
    vertex_weight: np.ndarray
    origin: np.ndarray
    nbr_weight: np.ndarray

    def __post_init__(self):
        for name in ("reduced_id", "vertex_weight", "origin", "nbr_weight"):
            object.__setattr__(self, name, _frozen(getattr(self, name)))

    @property
    def num_original(self) -> int:
        return len(self.reduced_id)

    @property
    def num_reduced(self) -> int:
        return len(self.origin)

    @property
    def is_trivial(self) -> bool:
        return self.mode == "none" and not np.any(self.vertex_weight != 1)

    def __eq__(self, other):
        if not isinstance(other, ReductionMaps):
            return NotImplemented
        return (self.mode == other.mode and self.cf == other.cf and self.tc == other.tc
                and all(np.array_equal(getattr(self, k), getattr(other, k))
                        for k in ("reduced_id", "vertex_weight", "origin", "nbr_weight")))

    __hash__ = None


def reduce_graph(g: Graph, mode: str = "none") -> tuple[Graph, ReductionMaps]:
    """Apply the selected reductions; returns the graph to index and the maps."""
    if mode not in REDUCE_MODES:
        raise ValueError(f"unknown reduce mode {mode!r}")
    n = g.num_vertices
    if mode in ("shell", "both"):
        core, cf, core_ids = one_shell(g)
    else:
        core, cf, core_ids = g, CoreFringe.trivial(n), np.arange(n)
    if mode in ("twin", "both"):
        rg, tc_core = twin_reduce(core)
        reduced, weights, origin_core = rg.graph, rg.vertex_weight, rg.origin
    else:
        tc_core = TwinClasses.trivial(core.num_vertices)
        reduced, weights, origin_core = core, np.ones(core.num_vertices, dtype=np.int64), np.arange(core.num_vertices)

    # lift twin classes from core ids to original ids
    rep = np.arange(n)
    tweight = np.ones(n, dtype=np.int64)
    kind = np.zeros(n, dtype=np.uint8)
    rep[core_ids] = core_ids[tc_core.rep]
    tweight[core_ids] = tc_core.weight
    kind[core_ids] = tc_core.kind
    tc = TwinClasses(rep, tweight, kind)

    origin = core_ids[origin_core]
    reduced_id = np.full(n, -1, dtype=np.int64)
    reduced_id[origin] = np.arange(len(origin))
    reduced_id[core_ids] = reduced_id[rep[core_ids]]

    if mode in ("twin", "both"):
        w = weights.tolist()
        nbr_weight = [sum(w[x] for x in nbrs) for nbrs in reduced.adj]
    else:
        nbr_weight = np.zeros(reduced.num_vertices, dtype=np.int64)
    maps = ReductionMaps(mode, cf, tc, reduced_id, weights, origin, nbr_weight)
    return Graph(reduced.offsets, reduced.neighbors), maps


def map_endpoint(maps: ReductionMaps, v: int) -> tuple[int, int]:
    """Map an original vertex to ``(indexed vertex, depth below its anchor)``.

    The indexed vertex is -1 when ``v`` lives in a tree-only component.
    """
    if not 0 <= v < maps.num_original:
        raise IndexError(f"vertex {v} out of range [0, {maps.num_original})")
    a = int(maps.cf.anchor[v])
    return int(maps.reduced_id[a]), int(maps.cf.depth[v])
