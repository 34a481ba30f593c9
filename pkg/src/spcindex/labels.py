"""Label types and the 2-hop join shared by builders and queries.

A label entry ``(hub_pos, dist, count)`` on vertex ``v`` says that the hub
(identified by its rank position) is at ``dist`` hops from ``v`` and that
``count`` shortest ``v``–hub paths have the hub as their highest-ranked
vertex. On a twin-reduced graph ``count`` weights each internal path
vertex by its multiplicity; the two endpoints are never weighted.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .errors import COUNT_MAX, CountOverflowError
from .ordering import VertexOrder
from .reduction import ReductionMaps


class LabelEntry(NamedTuple):
    hub_pos: int
    dist: int
    count: int


class VertexLabels:
    """Rank-sorted label entries of one vertex, stored column-wise."""

    __slots__ = ("hubs", "dists", "counts")

    def __init__(self, hubs: Sequence[int] = (), dists: Sequence[int] = (), counts: Sequence[int] = ()):
        self.hubs = list(hubs)
        self.dists = list(dists)
        self.counts = list(counts)

    @classmethod
    def from_entries(cls, entries: Iterable[tuple[int, int, int]]) -> "VertexLabels":
        rows = sorted(entries)
        return cls([r[0] for r in rows], [r[1] for r in rows], [r[2] for r in rows])

    def __len__(self):
        return len(self.hubs)

    def __iter__(self):
        for e in zip(self.hubs, self.dists, self.counts):
            yield LabelEntry(*e)

    @property
    def entries(self) -> list[LabelEntry]:
        return list(self)

    def get(self, hub_pos: int) -> LabelEntry | None:
        i = bisect.bisect_left(self.hubs, hub_pos)
        if i < len(self.hubs) and self.hubs[i] == hub_pos:
            return LabelEntry(hub_pos, self.dists[i], self.counts[i])
        return None

    def __eq__(self, other):
        if not isinstance(other, VertexLabels):
            return NotImplemented
        return self.hubs == other.hubs and self.dists == other.dists and self.counts == other.counts

    __hash__ = None

    def __repr__(self):
        return f"VertexLabels({self.entries})"

    def check(self, owner_rank: int) -> None:
        hubs = self.hubs
        if any(b <= a for a, b in zip(hubs, hubs[1:])):
            raise ValueError("hub positions not strictly increasing")
        if hubs and hubs[-1] > owner_rank:
            raise ValueError("hub ranks below its owner")
        if self.get(owner_rank) != (owner_rank, 0, 1):
            raise ValueError("self entry missing")
        for h, d, c in self:
            if c < 1 or (d == 0) != (h == owner_rank):
                raise ValueError(f"bad entry {(h, d, c)}")


def join(a: VertexLabels, b: VertexLabels, hub_weight: Sequence[int] | None = None,
         skip: tuple[int, int] = (-1, -1)) -> tuple[int, int] | None:
    """Merge-join two rank-sorted labels.

    Returns ``(dist, count)`` over the common hubs of minimal distance sum,
    or ``None`` when no hub is shared. ``hub_weight`` (indexed by rank
    position) multiplies the term of every hub not listed in ``skip``.
    Counts are unchecked; callers bound them.
    """
    ha, da, ca = a.hubs, a.dists, a.counts
    hb, db, cb = b.hubs, b.dists, b.counts
    la, lb = len(ha), len(hb)
    i = j = 0
    best = -1
    total = 0
    while i < la and j < lb:
        x, y = ha[i], hb[j]
        if x < y:
            i += 1
        elif y < x:
            j += 1
        else:
            d = da[i] + db[j]
            if best < 0 or d <= best:
                c = ca[i] * cb[j]
                if hub_weight is not None and x != skip[0] and x != skip[1]:
                    c *= hub_weight[x]
                if d == best:
                    total += c
                else:
                    best, total = d, c
            i += 1
            j += 1
    if best < 0:
        return None
    return best, total


def partial_query(labels: Sequence[VertexLabels], u: int, w: int,
                  hub_weight: Sequence[int] | None = None,
                  rank_of: Sequence[int] | None = None) -> tuple[int, int] | None:
    """2-hop evaluation of ``(u, w)`` over a (possibly partial) label state.

    With ``hub_weight`` given, ``rank_of`` identifies the endpoints so that
    their own hub terms are left unweighted.
    """
    skip = (-1, -1)
    if hub_weight is not None and rank_of is not None:
        skip = (int(rank_of[u]), int(rank_of[w]))
    res = join(labels[u], labels[w], hub_weight, skip)
    if res is not None and res[1] > COUNT_MAX:
        raise CountOverflowError((u, w), "label join")
    return res


@dataclass(eq=False)
class SpcIndex:
    """A finished label index plus everything needed to answer queries.

    ``labels`` and ``order`` live in the id space of the indexed (possibly
    reduced) graph; ``maps`` translates original ids. ``config`` is
    persisted with the index, ``info`` (builder name, timings, worker
    settings) is not.
    """

    order: VertexOrder
    labels: list[VertexLabels]
    maps: ReductionMaps
    config: dict = field(default_factory=dict)
    info: dict = field(default_factory=dict)
    id_map: np.ndarray | None = None

    def __post_init__(self):
        if self.id_map is not None:
            self.id_map = np.asarray(self.id_map, dtype=np.int64)
        w = self.maps.vertex_weight[self.order.vertex_at]
        self._hub_weight = w.tolist() if np.any(w != 1) else None

    @property
    def hub_weight(self) -> list[int] | None:
        """Vertex weight by rank position, or ``None`` when all are 1."""
        return self._hub_weight

    @property
    def num_indexed(self) -> int:
        return len(self.labels)

    @property
    def num_entries(self) -> int:
        return sum(len(lab) for lab in self.labels)

    def label_set(self, v: int) -> set[tuple[int, int, int]]:
        return set(self.labels[v])

    def __eq__(self, other):
        if not isinstance(other, SpcIndex):
            return NotImplemented
        return (self.order == other.order and self.labels == other.labels
                and self.maps == other.maps and self.config == other.config
                and _same_ids(self.id_map, other.id_map))

    __hash__ = None

    def vertex_of(self, external_id: int) -> int:
        """Original dense vertex for an external id."""
        if self.id_map is None:
            v = int(external_id)
            if not 0 <= v < self.maps.num_original:
                raise KeyError(external_id)
            return v
        i = int(np.searchsorted(self.id_map, external_id))
        if i >= len(self.id_map) or self.id_map[i] != external_id:
            raise KeyError(external_id)
        return i

    def validate(self) -> None:
        if len(self.labels) != len(self.order):
            raise ValueError("labels do not cover every indexed vertex")
        for v, lab in enumerate(self.labels):
            lab.check(int(self.order.rank_of[v]))


def _same_ids(a, b) -> bool:
    if a is None or b is None:
        return a is None and b is None
    return np.array_equal(a, b)
