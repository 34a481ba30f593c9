"""Exact shortest-path counting with 2-hop labels.

Build an index once, then answer ``(distance, number of shortest paths)``
queries for any vertex pair from the labels alone::

    from spcindex import load_edge_list, build_index, spc_query
    g = load_edge_list("graph.txt")
    idx = build_index(g, "hybrid", builder="pspc")
    spc_query(idx, 0, 5)
"""

from .errors import CountOverflowError, EdgeListParseError, IndexFormatError
from .graph import Graph, generate_random, load_edge_list, write_edge_list
from .index import build_index
from .io import load, save, stats
from .labels import LabelEntry, SpcIndex, VertexLabels, partial_query
from .ordering import VertexOrder, degree_order, elimination_order, hybrid_order
from .parallel import BuildConfig, build_parallel, eliminate_and_merge
from .query import UNREACHABLE, QueryResult, batch_query, spc_query
from .reduction import one_shell, reduce_graph, twin_reduce
from .sequential import build_sequential

__all__ = [
    "BuildConfig", "CountOverflowError", "EdgeListParseError", "Graph", "IndexFormatError",
    "LabelEntry", "QueryResult", "SpcIndex", "UNREACHABLE", "VertexLabels", "VertexOrder",
    "batch_query", "build_index", "build_parallel", "build_sequential", "degree_order",
    "eliminate_and_merge", "elimination_order", "generate_random", "hybrid_order", "load",
    "load_edge_list", "one_shell", "partial_query", "reduce_graph", "save", "spc_query",
    "stats", "twin_reduce", "write_edge_list",
]
