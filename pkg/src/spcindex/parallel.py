"""Distance-round label construction (pull or push propagation).

Round ``d`` creates every label entry at distance ``d`` from the entries
created in round ``d - 1`` on neighbouring vertices. Pruning only reads
the labels settled before the round started, so vertices within a round
are independent and may be processed by any number of workers; the
result is identical to :func:`spcindex.sequential.build_sequential`.
"""

from __future__ import annotations

import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import COUNT_MAX, CountOverflowError
from .graph import Graph
from .labels import SpcIndex, VertexLabels
from .ordering import VertexOrder, degree_order
from .reduction import ReductionMaps, reduce_graph

DEFAULT_LANDMARKS = 100
DYNAMIC_BLOCK = 32
MODES = ("pull", "push")
SCHEDULERS = ("static", "dynamic")


class BuildError(RuntimeError):
    """A worker failed while constructing labels."""


@dataclass(frozen=True)
class BuildConfig:
    mode: str = "pull"
    workers: int = 1
    landmark_count: int = DEFAULT_LANDMARKS
    scheduler: str = "dynamic"

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")
        if self.scheduler not in SCHEDULERS:
            raise ValueError(f"scheduler must be one of {SCHEDULERS}")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        if self.landmark_count < 0:
            raise ValueError("landmark_count must be >= 0")


def eliminate_and_merge(cands: Sequence[tuple[int, int, int]], check: bool = True) -> list[tuple[int, int, int]]:
    """Deduplicate ``(hub, dist, count)`` candidates.

    Per hub only the smallest distance survives; candidates sharing hub and
    distance are merged by summing their counts. Output is sorted by hub.
    """
    out: list[tuple[int, int, int]] = []
    for h, d, c in sorted(cands):
        if out and out[-1][0] == h:
            ph, pd, pc = out[-1]
            if pd == d:
                total = pc + c
                if check and total > COUNT_MAX:
                    raise CountOverflowError((h, d), "candidate merge")
                out[-1] = (h, d, total)
            continue
        out.append((h, d, c))
    return out


@dataclass
class LandmarkFilter:
    """One bit per (landmark, vertex): is the vertex within the settled radius?

    At the start of round ``d`` the bit for ``(l, v)`` is set iff
    ``dist(l, v) <= d - 1``.
    """

    landmarks: list[int]
    theta: int
    bits: list[bytearray]
    frontier: list[list[int]]
    radius: int = 0
    slot_of: dict[int, int] = field(default_factory=dict)

    @property
    def enabled(self) -> bool:
        return bool(self.landmarks)

    def settled(self, landmark: int, v: int) -> bool:
        return bool(self.bits[self.slot_of[landmark]][v])

    def matrix(self) -> np.ndarray:
        return np.array([np.frombuffer(b, dtype=np.uint8) for b in self.bits], dtype=bool).reshape(len(self.bits), -1)


def select_landmarks(g: Graph, k: int) -> LandmarkFilter:
    """Pick the ``k`` highest-degree vertices (ties to the smaller id)."""
    n = g.num_vertices
    k = max(0, min(k, n))
    chosen = degree_order(g).vertex_at[:k].tolist()
    theta = int(g.degrees[chosen[-1]]) if chosen else 0
    bits = []
    for lm in chosen:
        b = bytearray(n)
        b[lm] = 1
        bits.append(b)
    return LandmarkFilter(chosen, theta, bits, [[lm] for lm in chosen], 0,
                          {lm: i for i, lm in enumerate(chosen)})


def landmark_advance(filt: LandmarkFilter, g: Graph, d: int) -> LandmarkFilter:
    """Grow every landmark's settled ball by one hop, to radius ``d``."""
    if d != filt.radius + 1:
        raise ValueError(f"landmark filter at radius {filt.radius} cannot advance to {d}")
    adj = g.adj
    for i, front in enumerate(filt.frontier):
        b = filt.bits[i]
        nxt = []
        for x in front:
            for y in adj[x]:
                if not b[y]:
                    b[y] = 1
                    nxt.append(y)
        filt.frontier[i] = nxt
    filt.radius = d
    return filt


@dataclass
class RoundState:
    """Label state between rounds.

    ``settled[v]`` maps hub position to distance for entries with
    distance < ``d``; ``fresh[v]`` holds the ``(hub, count)`` pairs created at
    distance ``d - 1``.
    """

    d: int
    settled: list[dict[int, int]]
    fresh: list[list[tuple[int, int]]]
    entries: list[list[tuple[int, int, int]]]

    @classmethod
    def initial(cls, order: VertexOrder) -> "RoundState":
        rank = order.rank_of.tolist()
        return cls(
            d=1,
            settled=[{r: 0} for r in rank],
            fresh=[[(r, 1)] for r in rank],
            entries=[[(r, 0, 1)] for r in rank],
        )

    @property
    def done(self) -> bool:
        return not any(self.fresh)


def cost_estimate(u: int, state: RoundState, g: Graph) -> int:
    """Approximate work for ``u`` this round: frontier sizes of its neighbours."""
    fresh = state.fresh
    return sum(len(fresh[v]) for v in g.adj[u])


def exact_cost(u: int, state: RoundState, g: Graph, order: VertexOrder) -> int:
    r = int(order.rank_of[u])
    return sum(1 for v in g.adj[u] for h, _ in state.fresh[v] if h < r)


def schedule(order: VertexOrder, workers: int, scheduler: str,
             cost: Callable[[int], int] | None = None, block: int = DYNAMIC_BLOCK) -> list[list[int]]:
    """Split vertices into work units.

    ``static``: ``workers`` contiguous rank ranges of ``n // workers``
    positions, the last range absorbing the remainder. ``dynamic``: blocks
    of ``block`` consecutive ranks, heaviest first, to be claimed by
    whichever worker is idle.
    """
    va = order.vertex_at.tolist()
    n = len(va)
    if workers == 1:
        return [va] if n else []
    if scheduler == "static":
        q = n // workers
        bounds = [i * q for i in range(workers)] + [n]
        return [va[bounds[i]:bounds[i + 1]] for i in range(workers) if bounds[i] < bounds[i + 1]]
    blocks = [va[i:i + block] for i in range(0, n, block)]
    if cost is None:
        return blocks
    weights = [sum(cost(u) for u in b) for b in blocks]
    ranked = sorted(range(len(blocks)), key=lambda i: (-weights[i], i))
    return [blocks[i] for i in ranked]


class _RoundRunner:
    """Per-build context shared by the worker threads."""

    def __init__(self, g: Graph, order: VertexOrder, vertex_weight, filt: LandmarkFilter | None):
        self.adj = g.adj
        self.rank = order.rank_of.tolist()
        self.vertex_at = order.vertex_at.tolist()
        self.weight = None
        if vertex_weight is not None and np.any(np.asarray(vertex_weight) != 1):
            self.weight = [int(x) for x in vertex_weight]
        self.filt = filt if filt is not None and filt.enabled else None
        if self.filt is not None:
            self.lm_bits = [None] * len(self.rank)
            for lm, slot in self.filt.slot_of.items():
                self.lm_bits[self.rank[lm]] = self.filt.bits[slot]

    def factor(self, v: int, d: int) -> int:
        # the hub itself is an endpoint of the path, never weighted
        if self.weight is None or d == 1:
            return 1
        return self.weight[v]

    def gather(self, u: int, state: RoundState) -> list[tuple[int, int, int]]:
        d = state.d
        fresh = state.fresh
        cands = []
        for v in self.adj[u]:
            f = self.factor(v, d)
            for h, c in fresh[v]:
                cands.append((h, d, c * f))
        return cands

    def settle(self, u: int, cands, state: RoundState) -> list[tuple[int, int, int]]:
        """Dedup, rank-prune and distance-prune the candidates of ``u``."""
        d = state.d
        ru = self.rank[u]
        settled = state.settled
        lab_u = settled[u]
        out = []
        for h, hd, c in eliminate_and_merge([x for x in cands if x[0] < ru], check=False):
            if h in lab_u:
                continue
            if self.filt is not None and self.lm_bits[h] is not None:
                if self.lm_bits[h][u]:
                    continue
            else:
                lab_w = settled[self.vertex_at[h]]
                a, b = (lab_u, lab_w) if len(lab_u) <= len(lab_w) else (lab_w, lab_u)
                pruned = False
                for x, dx in a.items():
                    dy = b.get(x)
                    if dy is not None and dx + dy < d:
                        pruned = True
                        break
                if pruned:
                    continue
            if c > COUNT_MAX:
                raise CountOverflowError((h, ru), "label propagation")
            out.append((h, hd, c))
        return out

    def pull_chunk(self, vertices, state):
        return [(u, self.settle(u, self.gather(u, state), state)) for u in vertices]

    def push_chunk(self, sources, state, buffers, locks):
        d = state.d
        fresh = state.fresh
        nl = len(locks)
        for v in sources:
            items = fresh[v]
            if not items:
                continue
            f = self.factor(v, d)
            scaled = [(h, d, c * f) for h, c in items]
            for u in self.adj[v]:
                with locks[u % nl]:
                    buffers[u].extend(scaled)

    def settle_chunk(self, targets, state, buffers):
        return [(u, self.settle(u, buffers[u], state)) for u in targets]


def _run_units(pool, fn, units):
    if pool is None:
        return [fn(u) for u in units]
    futures = [pool.submit(fn, u) for u in units]
    out = []
    for i, fut in enumerate(futures):
        try:
            out.append(fut.result())
        except CountOverflowError:
            raise
        except Exception as exc:
            raise BuildError(f"worker failed on work unit {i}: {exc!r}") from exc
    return out


def _apply(state: RoundState, results) -> RoundState:
    d = state.d
    n = len(state.fresh)
    fresh: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for chunk in results:
        for u, new in chunk:
            if new:
                fresh[u] = [(h, c) for h, _, c in new]
                lab = state.settled[u]
                for h, _, _ in new:
                    lab[h] = d
                state.entries[u].extend(new)
    state.fresh = fresh
    state.d = d + 1
    return state


def pull_round(state: RoundState, runner: _RoundRunner, units, pool=None) -> RoundState:
    results = _run_units(pool, lambda vs: runner.pull_chunk(vs, state), units)
    return _apply(state, results)


def push_round(state: RoundState, runner: _RoundRunner, units, pool=None, n_locks: int = 64) -> RoundState:
    n = len(state.fresh)
    buffers: list[list[tuple[int, int, int]]] = [[] for _ in range(n)]
    locks = [threading.Lock() for _ in range(n_locks)]
    _run_units(pool, lambda vs: runner.push_chunk(vs, state, buffers, locks), units)
    results = _run_units(pool, lambda vs: runner.settle_chunk(vs, state, buffers), units)
    return _apply(state, results)


def parallel_labels(g: Graph, order: VertexOrder, cfg: BuildConfig = BuildConfig(),
                    vertex_weight=None, filt: LandmarkFilter | None = None,
                    on_round: Callable[[RoundState], None] | None = None) -> tuple[list[VertexLabels], dict]:
    n = g.num_vertices
    if len(order) != n:
        raise ValueError("order does not cover the graph")
    if filt is None:
        filt = select_landmarks(g, cfg.landmark_count)
    runner = _RoundRunner(g, order, vertex_weight, filt)
    state = RoundState.initial(order)
    pool = ThreadPoolExecutor(max_workers=cfg.workers) if cfg.workers > 1 else None
    rounds = 0
    try:
        while not state.done:
            if cfg.scheduler == "dynamic":
                units = schedule(order, cfg.workers, "dynamic", lambda u: cost_estimate(u, state, g))
            else:
                units = schedule(order, cfg.workers, "static")
            d = state.d
            if cfg.mode == "pull":
                state = pull_round(state, runner, units, pool)
            else:
                state = push_round(state, runner, units, pool)
            rounds += 1
            if filt.enabled:
                landmark_advance(filt, g, d)
            if on_round is not None:
                on_round(state)
    finally:
        if pool is not None:
            pool.shutdown(wait=True)
    labels = [VertexLabels.from_entries(e) for e in state.entries]
    info = {"rounds": rounds, "landmarks": len(filt.landmarks), "theta": filt.theta}
    return labels, info


def build_parallel(g: Graph, order: VertexOrder, cfg: BuildConfig = BuildConfig(),
                   vertex_weight=None, maps: ReductionMaps | None = None) -> SpcIndex:
    """Build the label index in distance rounds; equal to the sequential build."""
    if maps is None:
        _, maps = reduce_graph(g, "none")
        if vertex_weight is not None:
            from .sequential import _with_weights
            maps = _with_weights(maps, g, vertex_weight)
    elif vertex_weight is None:
        vertex_weight = maps.vertex_weight
    labels, info = parallel_labels(g, order, cfg, vertex_weight)
    info.update(builder="pspc", mode=cfg.mode, workers=cfg.workers, scheduler=cfg.scheduler)
    return SpcIndex(order, labels, maps, info=info)
