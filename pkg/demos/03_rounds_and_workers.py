#!/usr/bin/env python3
# Labels built in distance rounds: every entry of round d has distance d,
# vertices inside a round are independent, so worker count never changes
# the result.

import time

import numpy as np

from spcindex import BuildConfig, generate_random
from spcindex import io as index_io
from spcindex.index import build_index
from spcindex.ordering import hybrid_order
from spcindex.parallel import parallel_labels
from spcindex.sequential import sequential_labels

g = generate_random(3000, 2.0, 42)
order = hybrid_order(g)
print("n", g.num_vertices, "m", g.num_edges)

# %% entries created per round
created = []
parallel_labels(g, order, BuildConfig(), on_round=lambda st: created.append(sum(map(len, st.fresh))))
for d, k in enumerate(created, start=1):
    print(f"round {d:>2}: {k} entries")

# %% same labels as the rank-by-rank builder
ref = sequential_labels(g, order)
for mode in ("pull", "push"):
    for workers in (1, 4):
        t0 = time.perf_counter()
        labels, info = parallel_labels(g, order, BuildConfig(mode=mode, workers=workers))
        print(f"{mode} x{workers}: {time.perf_counter() - t0:.2f}s  equal={labels == ref}")

# %% byte-identical index files
a = index_io.to_bytes(build_index(g, order, builder="seq"))
b = index_io.to_bytes(build_index(g, order, cfg=BuildConfig(mode="push", workers=8)))
print("same bytes:", a == b, len(a), "bytes")

# %% label size distribution
sizes = np.array([len(lab) for lab in ref])
print("entries per vertex: mean %.1f, median %d, max %d" % (sizes.mean(), np.median(sizes), sizes.max()))
