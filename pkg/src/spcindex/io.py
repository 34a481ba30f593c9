"""Binary index files and index statistics.

Layout (little-endian throughout)::

    "SPCX"  u16 version  u16 flags  u64 n_indexed  u64 n_original  u64 m
    u32 config_len  config (UTF-8 JSON, sorted keys)
    vertex_at[n_indexed] u32      rank_of[n_indexed] u32
    per indexed vertex: u32 k, then k x (u32 hub rank, u32 dist, u64 count)
    if flags & 1 (reductions):
        u8 mode
        in_core[n_original] u8   anchor, parent, depth, twin_rep [n_original] u32
        twin_kind[n_original] u8 twin_weight[n_original] u64
        indexed_id[n_original] u32 (0xFFFFFFFF = not indexed)
        origin[n_indexed] u32    vertex_weight, nbr_weight [n_indexed] u64
    if flags & 2 (external ids): id_map[n_original] u64
    u64 checksum (BLAKE2b-64 of every preceding byte)

Execution details (builder, workers, timings) are not stored, so the same
labels always serialize to the same bytes.
"""

from __future__ import annotations

import hashlib
import io
import json
import os
import struct
from collections import Counter

import numpy as np

from .errors import (BadMagicError, ChecksumError, IndexFormatError, TruncatedIndexError,
                     UnsupportedVersionError)
from .labels import SpcIndex, VertexLabels
from .ordering import VertexOrder
from .reduction import REDUCE_MODES, CoreFringe, ReductionMaps, TwinClasses, reduce_graph

MAGIC = b"SPCX"
VERSION = 1
FLAG_REDUCTIONS = 0x1
FLAG_ID_MAP = 0x2
ENTRY_BYTES = 16
_HEADER = struct.Struct("<4sHHQQQ")
_ENTRY = np.dtype([("hub", "<u4"), ("dist", "<u4"), ("count", "<u8")])
_NONE32 = 0xFFFFFFFF


def _checksum(data: bytes) -> int:
    return int.from_bytes(hashlib.blake2b(data, digest_size=8).digest(), "little")


def to_bytes(idx: SpcIndex) -> bytes:
    maps = idx.maps
    n = idx.num_indexed
    n_orig = maps.num_original
    reduced = not maps.is_trivial
    config = dict(idx.config)
    m = int(config.get("m", 0))
    out = io.BytesIO()
    flags = (FLAG_REDUCTIONS if reduced else 0) | (FLAG_ID_MAP if idx.id_map is not None else 0)
    out.write(_HEADER.pack(MAGIC, VERSION, flags, n, n_orig, m))
    blob = json.dumps(config, sort_keys=True, separators=(",", ":")).encode()
    out.write(struct.pack("<I", len(blob)))
    out.write(blob)
    out.write(idx.order.vertex_at.astype("<u4").tobytes())
    out.write(idx.order.rank_of.astype("<u4").tobytes())
    for lab in idx.labels:
        k = len(lab)
        out.write(struct.pack("<I", k))
        rec = np.empty(k, dtype=_ENTRY)
        rec["hub"] = lab.hubs
        rec["dist"] = lab.dists
        rec["count"] = np.array(lab.counts, dtype=np.uint64)
        out.write(rec.tobytes())
    if reduced:
        out.write(struct.pack("<B", REDUCE_MODES.index(maps.mode)))
        out.write(maps.cf.in_core.astype("u1").tobytes())
        for arr in (maps.cf.anchor, maps.cf.parent, maps.cf.depth, maps.tc.rep):
            out.write(arr.astype("<u4").tobytes())
        out.write(maps.tc.kind.astype("u1").tobytes())
        out.write(maps.tc.weight.astype("<u8").tobytes())
        out.write(np.where(maps.reduced_id < 0, _NONE32, maps.reduced_id).astype("<u4").tobytes())
        out.write(maps.origin.astype("<u4").tobytes())
        out.write(maps.vertex_weight.astype("<u8").tobytes())
        out.write(maps.nbr_weight.astype("<u8").tobytes())
    if idx.id_map is not None:
        out.write(idx.id_map.astype("<u8").tobytes())
    body = out.getvalue()
    return body + struct.pack("<Q", _checksum(body))


def save(idx: SpcIndex, sink) -> int:
    """Write ``idx`` to a path or binary stream; returns the byte count."""
    data = to_bytes(idx)
    if isinstance(sink, (str, os.PathLike)):
        with open(sink, "wb") as fh:
            fh.write(data)
    else:
        sink.write(data)
    return len(data)


class _Reader:
    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def take(self, k: int) -> bytes:
        if self.pos + k > len(self.data):
            raise TruncatedIndexError(f"index truncated at byte {len(self.data)} (needed {self.pos + k})")
        chunk = self.data[self.pos:self.pos + k]
        self.pos += k
        return chunk

    def unpack(self, fmt: str):
        s = struct.Struct(fmt)
        return s.unpack(self.take(s.size))

    def array(self, dtype: str, count: int) -> np.ndarray:
        dt = np.dtype(dtype)
        return np.frombuffer(self.take(dt.itemsize * count), dtype=dt).astype(np.int64)


def from_bytes(data: bytes) -> SpcIndex:
    if len(data) < 4 or data[:4] != MAGIC:
        raise BadMagicError("not an index file (bad magic)")
    r = _Reader(data)
    _, version, flags, n, n_orig, m = r.unpack(_HEADER.format)
    if version != VERSION:
        raise UnsupportedVersionError(f"unsupported index format version {version}")
    (blob_len,) = r.unpack("<I")
    try:
        config = json.loads(r.take(blob_len).decode())
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise IndexFormatError(f"corrupt config block: {exc}") from None
    vertex_at = r.array("<u4", n)
    rank_of = r.array("<u4", n)
    labels = []
    for _ in range(n):
        (k,) = r.unpack("<I")
        rec = np.frombuffer(r.take(k * ENTRY_BYTES), dtype=_ENTRY)
        labels.append(VertexLabels(rec["hub"].tolist(), rec["dist"].tolist(), rec["count"].tolist()))
    if flags & FLAG_REDUCTIONS:
        (mode_code,) = r.unpack("<B")
        if mode_code >= len(REDUCE_MODES):
            raise IndexFormatError(f"unknown reduction mode code {mode_code}")
        in_core = r.array("u1", n_orig).astype(bool)
        anchor, parent, depth, rep = (r.array("<u4", n_orig) for _ in range(4))
        kind = r.array("u1", n_orig)
        tweight = r.array("<u8", n_orig)
        rid = r.array("<u4", n_orig)
        rid[rid == _NONE32] = -1
        origin = r.array("<u4", n)
        vweight = r.array("<u8", n)
        nbr_weight = r.array("<u8", n)
        maps = ReductionMaps(REDUCE_MODES[mode_code], CoreFringe(in_core, anchor, parent, depth),
                             TwinClasses(rep, tweight, kind), rid, vweight, origin, nbr_weight)
    else:
        if n_orig != n:
            raise IndexFormatError("vertex counts differ but no reduction section present")
        maps = _trivial_maps(n)
    id_map = r.array("<u8", n_orig) if flags & FLAG_ID_MAP else None
    body_end = r.pos
    (stored,) = r.unpack("<Q")
    if r.pos != len(data):
        raise IndexFormatError(f"{len(data) - r.pos} trailing bytes after checksum")
    if stored != _checksum(data[:body_end]):
        raise ChecksumError("index checksum mismatch")
    try:
        order = VertexOrder(rank_of, vertex_at)
    except ValueError as exc:
        raise IndexFormatError(str(exc)) from None
    if config.get("m", m) != m:
        raise IndexFormatError("edge count in header and config disagree")
    idx = SpcIndex(order, labels, maps, config=config, info={"loaded": True},
                   id_map=id_map)
    try:
        idx.validate()
    except ValueError as exc:
        raise IndexFormatError(f"invalid labels: {exc}") from None
    return idx


def _trivial_maps(n: int) -> ReductionMaps:
    from .graph import from_edges
    _, maps = reduce_graph(from_edges(n, []), "none")
    return maps


def load(source) -> SpcIndex:
    """Read an index from a path, a binary stream or a bytes object."""
    if isinstance(source, (bytes, bytearray, memoryview)):
        data = bytes(source)
    elif isinstance(source, (str, os.PathLike)):
        with open(source, "rb") as fh:
            data = fh.read()
    else:
        data = source.read()
    return from_bytes(data)


def stats(idx: SpcIndex) -> dict:
    """Label counts and the payload size at 16 bytes per entry."""
    sizes = [len(lab) for lab in idx.labels]
    total = sum(sizes)
    hist = Counter(d for lab in idx.labels for d in lab.dists)
    return {
        "vertices": len(sizes),
        "entries": total,
        "bytes": total * ENTRY_BYTES,
        "mean_per_vertex": total / len(sizes) if sizes else 0.0,
        "max_per_vertex": max(sizes, default=0),
        "dist_histogram": dict(sorted(hist.items())),
    }
