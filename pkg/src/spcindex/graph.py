"""Compact undirected, unweighted graphs in CSR form.

Every other module consumes :class:`Graph`. Vertices are dense ids
``0..n-1``; ``id_map`` (when present) maps them back to the external ids
found in the source file.
"""

from __future__ import annotations

import io
import os
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, TextIO

import numpy as np

from .errors import EdgeListParseError

COMMENT_PREFIXES = ("#", "%")
_U32_MAX = (1 << 32) - 1


@dataclass(frozen=True, eq=False)
class Graph:
    offsets: np.ndarray
    neighbors: np.ndarray
    id_map: np.ndarray | None = field(default=None)

    @property
    def num_vertices(self) -> int:
        return len(self.offsets) - 1

    @property
    def num_edges(self) -> int:
        return len(self.neighbors) // 2

    n = num_vertices
    m = num_edges

    def __post_init__(self):
        object.__setattr__(self, "offsets", np.ascontiguousarray(self.offsets, dtype=np.int64))
        object.__setattr__(self, "neighbors", np.ascontiguousarray(self.neighbors, dtype=np.int64))
        if self.id_map is not None:
            object.__setattr__(self, "id_map", np.ascontiguousarray(self.id_map, dtype=np.int64))
        self.offsets.setflags(write=False)
        self.neighbors.setflags(write=False)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        if (self.id_map is None) != (other.id_map is None):
            return False
        return (
            np.array_equal(self.offsets, other.offsets)
            and np.array_equal(self.neighbors, other.neighbors)
            and (self.id_map is None or np.array_equal(self.id_map, other.id_map))
        )

    __hash__ = None

    def __repr__(self):
        return f"Graph(n={self.num_vertices}, m={self.num_edges})"

    def _check(self, v: int) -> None:
        if not 0 <= v < self.num_vertices:
            raise IndexError(f"vertex {v} out of range [0, {self.num_vertices})")

    def degree(self, v: int) -> int:
        self._check(v)
        return int(self.offsets[v + 1] - self.offsets[v])

    def neighbors_of(self, v: int) -> np.ndarray:
        self._check(v)
        return self.neighbors[self.offsets[v]:self.offsets[v + 1]]

    @cached_property
    def degrees(self) -> np.ndarray:
        d = np.diff(self.offsets)
        d.setflags(write=False)
        return d

    @cached_property
    def adj(self) -> list[list[int]]:
        """Neighbor lists as plain Python lists (hot loops index these)."""
        nb = self.neighbors.tolist()
        off = self.offsets.tolist()
        return [nb[off[v]:off[v + 1]] for v in range(self.num_vertices)]

    def edges(self) -> Iterable[tuple[int, int]]:
        """Yield each undirected edge once as ``(u, v)`` with ``u < v``."""
        for u, nbrs in enumerate(self.adj):
            for v in nbrs:
                if u < v:
                    yield u, v

    def external_id(self, v: int) -> int:
        return int(self.id_map[v]) if self.id_map is not None else v

    def validate(self) -> None:
        """Raise ``ValueError`` unless every CSR invariant holds."""
        n = self.num_vertices
        off, nb = self.offsets, self.neighbors
        if n < 0 or off[0] != 0 or off[-1] != len(nb) or len(nb) % 2:
            raise ValueError("malformed offsets")
        if np.any(np.diff(off) < 0):
            raise ValueError("offsets not non-decreasing")
        if len(nb) and (nb.min() < 0 or nb.max() >= n):
            raise ValueError("neighbor id out of range")
        src = np.repeat(np.arange(n), np.diff(off))
        if np.any(src == nb):
            raise ValueError("self-loop present")
        same_row = src[1:] == src[:-1]
        if np.any(same_row & (nb[1:] <= nb[:-1])):
            raise ValueError("neighbor list not strictly ascending")
        fwd = np.sort(src * max(n, 1) + nb)
        bwd = np.sort(nb * max(n, 1) + src)
        if not np.array_equal(fwd, bwd):
            raise ValueError("adjacency not symmetric")
        if self.id_map is not None and len(self.id_map) != n:
            raise ValueError("id_map length mismatch")


def from_edges(n: int, edges, id_map=None) -> Graph:
    """Build a graph on ``n`` vertices from an iterable or ``(k, 2)`` array of pairs.

    Self-loops are dropped, parallel edges collapsed and each pair symmetrized.
    """
    e = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges, dtype=np.int64)
    e = e.reshape(-1, 2)
    if len(e) and (e.min() < 0 or e.max() >= n):
        raise ValueError("edge endpoint out of range")
    e = e[e[:, 0] != e[:, 1]]
    both = np.concatenate([e, e[:, ::-1]])
    if len(both):
        both = np.unique(both, axis=0)
    counts = np.bincount(both[:, 0], minlength=n) if len(both) else np.zeros(n, dtype=np.int64)
    offsets = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(counts, out=offsets[1:])
    return Graph(offsets, both[:, 1] if len(both) else np.zeros(0, dtype=np.int64), id_map)


def _open_lines(src) -> tuple[Iterable[str], TextIO | None]:
    if isinstance(src, (str, os.PathLike)):
        fh = open(src, "r", encoding="utf-8")
        return fh, fh
    if isinstance(src, io.IOBase) or hasattr(src, "read"):
        return src, None
    return src, None


def load_edge_list(src) -> Graph:
    """Parse a SNAP/KONECT-style edge list.

    ``src`` may be a path, a text stream or an iterable of lines. External
    ids are remapped to dense ids in ascending order of the original id.
    """
    lines, owned = _open_lines(src)
    pairs: list[tuple[int, int]] = []
    try:
        for lineno, raw in enumerate(lines, start=1):
            line = raw.strip()
            if not line or line.startswith(COMMENT_PREFIXES):
                continue
            tokens = line.split()
            if len(tokens) != 2:
                raise EdgeListParseError(f"expected 2 ids, got {len(tokens)} tokens", lineno)
            try:
                a, b = int(tokens[0]), int(tokens[1])
            except ValueError:
                raise EdgeListParseError(f"non-integer token in {line!r}", lineno) from None
            if not (0 <= a <= _U32_MAX and 0 <= b <= _U32_MAX):
                raise EdgeListParseError("id outside unsigned 32-bit range", lineno)
            pairs.append((a, b))
    finally:
        if owned is not None:
            owned.close()
    if not pairs:
        raise EdgeListParseError("empty edge list")
    raw_edges = np.array(pairs, dtype=np.int64)
    ids, dense = np.unique(raw_edges, return_inverse=True)
    return from_edges(len(ids), dense.reshape(-1, 2), id_map=ids)


def write_edge_list(g: Graph, sink) -> None:
    """Write one ``u v`` line per undirected edge, using external ids."""
    owned = None
    if isinstance(sink, (str, os.PathLike)):
        sink = owned = open(sink, "w", encoding="utf-8")
    try:
        for u, v in g.edges():
            sink.write(f"{g.external_id(u)} {g.external_id(v)}\n")
    finally:
        if owned is not None:
            owned.close()


def degree(g: Graph, v: int) -> int:
    return g.degree(v)


def generate_random(n: int, edge_factor: float, seed: int) -> Graph:
    """Erdős–Rényi style G(n, M) graph with roughly ``edge_factor * n`` edges.

    Deterministic for a fixed ``(n, edge_factor, seed)``.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if edge_factor < 0:
        raise ValueError("edge_factor must be non-negative")
    max_edges = n * (n - 1) // 2
    target = min(int(round(edge_factor * n)), max_edges)
    rng = np.random.default_rng(seed)
    if target == 0:
        return from_edges(n, np.zeros((0, 2), dtype=np.int64))
    if target > max_edges // 2:
        # dense regime: sample edge codes without replacement
        codes = rng.choice(max_edges, size=target, replace=False)
        iu = np.triu_indices(n, k=1)
        e = np.stack([iu[0][codes], iu[1][codes]], axis=1)
        return from_edges(n, e)
    chosen: set[tuple[int, int]] = set()
    while len(chosen) < target:
        k = target - len(chosen)
        cand = rng.integers(0, n, size=(2 * k + 8, 2))
        for a, b in cand.tolist():
            if a == b:
                continue
            if a > b:
                a, b = b, a
            chosen.add((a, b))
            if len(chosen) == target:
                break
    return from_edges(n, sorted(chosen))


def induced_subgraph(g: Graph, vertices) -> tuple[Graph, np.ndarray]:
    """Induced subgraph on ``vertices``; returns it with the new→old id array.

    New ids follow ascending old id.
    """
    keep = np.unique(np.asarray(vertices, dtype=np.int64))
    new_id = np.full(g.num_vertices, -1, dtype=np.int64)
    new_id[keep] = np.arange(len(keep))
    src = np.repeat(np.arange(g.num_vertices), g.degrees)
    mask = (new_id[src] >= 0) & (new_id[g.neighbors] >= 0)
    e = np.stack([new_id[src[mask]], new_id[g.neighbors[mask]]], axis=1)
    e = e[e[:, 0] < e[:, 1]]
    return from_edges(len(keep), e), keep
