#!/usr/bin/env python3
# Build a counting index on a 10-vertex graph, look at the labels, ask queries.

import numpy as np

from spcindex import build_index, load_edge_list, spc_query
from spcindex.oracle import oracle_query

# %% the graph, as edge-list lines
lines = """
1 3
1 4
1 5
1 10
7 4
7 5
7 6
7 8
3 6
2 4
2 10
9 8
9 10
""".split("\n")
g = load_edge_list(lines)
print("vertices", g.num_vertices, "edges", g.num_edges)
print("degrees", dict(zip(g.id_map.tolist(), g.degrees.tolist())))

# %% vertex importance, most important first (external ids)
order = [1, 7, 4, 10, 3, 5, 6, 2, 8, 9]
idx = build_index(g, order, builder="seq")
print("label entries", idx.num_entries)

# %% labels: (hub, distance, number of shortest paths topped by the hub)
va = idx.order.vertex_at
for v in range(g.num_vertices):
    entries = [(g.external_id(int(va[h])), d, c) for h, d, c in idx.labels[v]]
    print(f"v{g.external_id(v):<3}", entries)

# %% a query joins two labels over their common hubs
s, t = idx.vertex_of(10), idx.vertex_of(7)
print("v10 -> v7:", spc_query(idx, s, t))
print("BFS says:  ", oracle_query(g, s, t))

# %% every pair at once, checked against plain BFS
n = g.num_vertices
dist = np.array([[spc_query(idx, a, b).dist for b in range(n)] for a in range(n)])
count = np.array([[spc_query(idx, a, b).count for b in range(n)] for a in range(n)])
ok = all(tuple(spc_query(idx, a, b)) == oracle_query(g, a, b) for a in range(n) for b in range(n))
print(dist)
print(count)
print("all pairs agree with BFS:", ok)
