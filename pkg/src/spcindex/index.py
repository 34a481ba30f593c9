"""One-call index construction: reduce, order, label."""

from __future__ import annotations

import time
from typing import Sequence

import numpy as np

from .graph import Graph
from .labels import SpcIndex
from .ordering import DEFAULT_DELTA, VertexOrder, make_order, order_from_external
from .parallel import BuildConfig, parallel_labels, select_landmarks
from .reduction import reduce_graph
from .sequential import sequential_labels

BUILDERS = ("seq", "pspc")


def build_index(
    g: Graph,
    order: str | VertexOrder | Sequence[int] = "hybrid",
    *,
    delta: int = DEFAULT_DELTA,
    reduce: str = "none",
    builder: str = "pspc",
    cfg: BuildConfig | None = None,
) -> SpcIndex:
    """Build a shortest-path-counting index for ``g``.

    ``order`` is an ordering name (``degree``, ``elim``, ``hybrid``), a
    ready :class:`VertexOrder` over the indexed graph, or a sequence of
    external vertex ids listed most important first.
    """
    if builder not in BUILDERS:
        raise ValueError(f"builder must be one of {BUILDERS}")
    cfg = cfg or BuildConfig()
    timings = {}

    t0 = time.perf_counter()
    reduced, maps = reduce_graph(g, reduce)
    timings["reduce"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    if isinstance(order, str):
        kind = order
        vo = make_order(reduced, order, delta)
    elif isinstance(order, VertexOrder):
        kind = "explicit"
        vo = order
    else:
        kind = "explicit"
        ext = Graph(reduced.offsets, reduced.neighbors,
                    np.array([g.external_id(int(v)) for v in maps.origin], dtype=np.int64))
        vo = order_from_external(ext, order)
    if len(vo) != reduced.num_vertices:
        raise ValueError("order does not match the indexed graph")
    timings["order"] = time.perf_counter() - t0

    info = {"builder": builder}
    if builder == "seq":
        t0 = time.perf_counter()
        labels = sequential_labels(reduced, vo, maps.vertex_weight)
        timings["labels"] = time.perf_counter() - t0
    else:
        t0 = time.perf_counter()
        filt = select_landmarks(reduced, cfg.landmark_count)
        timings["landmarks"] = time.perf_counter() - t0
        t0 = time.perf_counter()
        labels, extra = parallel_labels(reduced, vo, cfg, maps.vertex_weight, filt)
        timings["labels"] = time.perf_counter() - t0
        info.update(extra)
        info.update(mode=cfg.mode, workers=cfg.workers, scheduler=cfg.scheduler,
                    landmark_count=cfg.landmark_count)
    info["timings"] = timings
    config = {"order": kind, "delta": int(delta) if kind == "hybrid" else 0, "reduce": reduce,
              "m": g.num_edges}
    return SpcIndex(vo, labels, maps, config=config, info=info, id_map=g.id_map)
