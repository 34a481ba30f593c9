"""Point-to-point shortest-path distance and count queries."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import NamedTuple, Sequence

from .errors import COUNT_MAX, CountOverflowError
from .labels import SpcIndex, join
from .reduction import ADJACENT, NONADJACENT, map_endpoint, tree_distance

UNREACHABLE = -1
BATCH_CHUNK = 256


class QueryResult(NamedTuple):
    dist: int
    count: int

    @property
    def reachable(self) -> bool:
        return self.dist != UNREACHABLE

    def __str__(self):
        return f"{'INF' if self.dist == UNREACHABLE else self.dist} {self.count}"


NO_PATH = QueryResult(UNREACHABLE, 0)


class BatchQueryError(Exception):
    def __init__(self, index: int, pair, cause: Exception):
        self.index = index
        self.pair = pair
        super().__init__(f"query #{index} {pair} failed: {cause}")


def spc_query(idx: SpcIndex, s: int, t: int) -> QueryResult:
    """Distance and number of shortest paths between original vertices ``s`` and ``t``."""
    maps = idx.maps
    n = maps.num_original
    if not (0 <= s < n and 0 <= t < n):
        raise IndexError(f"query ({s}, {t}) out of range [0, {n})")
    if s == t:
        return QueryResult(0, 1)
    cf = maps.cf
    a, b = int(cf.anchor[s]), int(cf.anchor[t])
    if a == b:
        return QueryResult(tree_distance(cf, s, t), 1)
    rs, ds = map_endpoint(maps, s)
    rt, dt = map_endpoint(maps, t)
    if rs < 0 or rt < 0:
        return NO_PATH
    if rs == rt:
        # distinct members of one twin class
        kind = maps.tc.kind[a]
        if kind == ADJACENT:
            return QueryResult(ds + dt + 1, 1)
        if kind == NONADJACENT:
            common = int(maps.nbr_weight[rs])
            return QueryResult(ds + dt + 2, common) if common else NO_PATH
        raise AssertionError("distinct anchors share an indexed vertex outside a twin class")
    rank = idx.order.rank_of
    res = join(idx.labels[rs], idx.labels[rt], idx.hub_weight, (int(rank[rs]), int(rank[rt])))
    if res is None:
        return NO_PATH
    d, c = res
    if c > COUNT_MAX:
        raise CountOverflowError((s, t), "query")
    return QueryResult(d + ds + dt, c)


def _chunk(idx, pairs, start):
    out = []
    for k, (s, t) in enumerate(pairs):
        try:
            out.append(spc_query(idx, int(s), int(t)))
        except Exception as exc:
            return out, (start + k, (s, t), exc)
    return out, None


def batch_query(idx: SpcIndex, pairs: Sequence[tuple[int, int]], workers: int = 1) -> list[QueryResult]:
    """Answer many queries; results line up with ``pairs``.

    Chunks of pairs are handed to idle workers as they free up.
    """
    if workers < 1:
        raise ValueError("workers must be >= 1")
    pairs = list(pairs)
    spans = [(i, pairs[i:i + BATCH_CHUNK]) for i in range(0, len(pairs), BATCH_CHUNK)]
    if workers == 1 or len(spans) <= 1:
        parts = [_chunk(idx, p, i) for i, p in spans]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda sp: _chunk(idx, sp[1], sp[0]), spans))
    results: list[QueryResult] = []
    for out, err in parts:
        if err is not None:
            i, pair, exc = err
            raise BatchQueryError(i, pair, exc) from exc
        results.extend(out)
    return results
