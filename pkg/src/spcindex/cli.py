"""Command-line entry point: ``spcindex {build,query,batch,stats,verify,bench}``.

Output is plain ``key=value`` lines or CSV so it can be piped into scripts.
Exit codes: 0 ok, 1 usage, 2 data error, 3 verification failure.
"""

from __future__ import annotations

import argparse
import sys
import time

import numpy as np

from . import io as index_io
from .errors import CountOverflowError, EdgeListParseError, IndexFormatError, OracleBoundError
from .graph import generate_random, load_edge_list
from .index import build_index
from .oracle import DEFAULT_BOUND, all_pairs_oracle
from .ordering import DEFAULT_DELTA
from .parallel import DEFAULT_LANDMARKS, BuildConfig
from .query import BatchQueryError, batch_query, spc_query

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_VERIFY = 0, 1, 2, 3
BENCH_HEADER = "threads,build_s,speedup"
QUERY_HEADER = "batch_size,total_s,queries_per_s"
SPEEDUP_TARGET = 0.7


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _add_build_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--order", choices=("degree", "elim", "hybrid"), default="hybrid")
    p.add_argument("--order-file", help="external ids, most important first (overrides --order)")
    p.add_argument("--delta", type=int, default=DEFAULT_DELTA)
    p.add_argument("--builder", choices=("seq", "pspc"), default="pspc")
    p.add_argument("--mode", choices=("pull", "push"), default="pull")
    p.add_argument("--threads", type=_positive, default=1)
    p.add_argument("--landmarks", type=int, default=DEFAULT_LANDMARKS)
    p.add_argument("--scheduler", choices=("static", "dynamic"), default="dynamic")
    p.add_argument("--reduce", choices=("none", "shell", "twin", "both"), default="none")


def make_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="spcindex", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("build", help="build an index from an edge list")
    p.add_argument("--graph", required=True)
    p.add_argument("--index", required=True)
    _add_build_flags(p)

    p = sub.add_parser("query", help="answer one query")
    p.add_argument("--index", required=True)
    p.add_argument("s", type=int)
    p.add_argument("t", type=int)

    p = sub.add_parser("batch", help="answer a file of 's t' pairs")
    p.add_argument("--index", required=True)
    p.add_argument("--threads", type=_positive, default=1)
    p.add_argument("pairs")

    p = sub.add_parser("stats", help="index statistics")
    p.add_argument("--index", required=True)

    p = sub.add_parser("verify", help="compare every pair against brute-force BFS")
    p.add_argument("--graph", required=True)
    p.add_argument("--index", required=True)
    p.add_argument("--bound", type=int, default=DEFAULT_BOUND)

    p = sub.add_parser("bench", help="build-time speedup over a thread ladder")
    p.add_argument("--graph", help="edge list; a random graph is generated when omitted")
    p.add_argument("--n", type=_positive, default=2000)
    p.add_argument("--edge-factor", type=float, default=2.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-threads", type=_positive, default=4)
    p.add_argument("--queries", type=int, default=10_000)
    _add_build_flags(p)
    return parser


def _order_arg(args):
    if args.order_file:
        with open(args.order_file, encoding="utf-8") as fh:
            return [int(tok) for tok in fh.read().split()]
    return args.order


def _config(args, threads=None) -> BuildConfig:
    return BuildConfig(mode=args.mode, workers=threads or args.threads,
                       landmark_count=args.landmarks, scheduler=args.scheduler)


def _build(g, args, threads=None):
    return build_index(g, _order_arg(args), delta=args.delta, reduce=args.reduce,
                       builder=args.builder, cfg=_config(args, threads))


def cmd_build(args, out) -> int:
    t0 = time.perf_counter()
    g = load_edge_list(args.graph)
    load_s = time.perf_counter() - t0
    idx = _build(g, args)
    total = time.perf_counter() - t0
    written = index_io.save(idx, args.index)
    print(f"n={g.num_vertices}", file=out)
    print(f"m={g.num_edges}", file=out)
    print(f"load={load_s:.6f}", file=out)
    for phase, secs in idx.info["timings"].items():
        print(f"{phase}={secs:.6f}", file=out)
    print(f"total={total:.6f}", file=out)
    print(f"entries={idx.num_entries}", file=out)
    print(f"bytes_written={written}", file=out)
    return EXIT_OK


def _resolve(idx, ext: int) -> int:
    try:
        return idx.vertex_of(ext)
    except KeyError:
        raise ValueError(f"unknown vertex id {ext}") from None


def cmd_query(args, out) -> int:
    idx = index_io.load(args.index)
    res = spc_query(idx, _resolve(idx, args.s), _resolve(idx, args.t))
    print(str(res), file=out)
    return EXIT_OK


def _read_pairs(path: str) -> list[tuple[int, int]]:
    pairs = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith(("#", "%")):
                continue
            tok = line.split()
            if len(tok) != 2:
                raise EdgeListParseError("expected 's t'", lineno)
            try:
                pairs.append((int(tok[0]), int(tok[1])))
            except ValueError:
                raise EdgeListParseError(f"non-integer token in {line!r}", lineno) from None
    return pairs


def cmd_batch(args, out) -> int:
    idx = index_io.load(args.index)
    pairs = [(_resolve(idx, s), _resolve(idx, t)) for s, t in _read_pairs(args.pairs)]
    t0 = time.perf_counter()
    results = batch_query(idx, pairs, args.threads)
    elapsed = time.perf_counter() - t0
    for r in results:
        print(str(r), file=out)
    mean_us = 1e6 * elapsed / len(pairs) if pairs else 0.0
    print(f"mean_latency_us={mean_us:.3f}", file=out)
    return EXIT_OK


def cmd_stats(args, out) -> int:
    idx = index_io.load(args.index)
    st = index_io.stats(idx)
    hist = st.pop("dist_histogram")
    for k, v in st.items():
        print(f"{k}={v:.3f}" if isinstance(v, float) else f"{k}={v}", file=out)
    for d, c in hist.items():
        print(f"dist_{d}={c}", file=out)
    for k, v in sorted(idx.config.items()):
        print(f"config.{k}={v}", file=out)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    g = load_edge_list(args.graph)
    idx = index_io.load(args.index)
    if idx.maps.num_original != g.num_vertices:
        print(f"index covers {idx.maps.num_original} vertices, graph has {g.num_vertices}", file=out)
        return EXIT_VERIFY
    table = all_pairs_oracle(g, bound=args.bound)
    n = g.num_vertices
    for s in range(n):
        for t in range(n):
            got = tuple(spc_query(idx, s, t))
            if got != table[s][t]:
                print(f"mismatch s={g.external_id(s)} t={g.external_id(t)} "
                      f"got={got[0]},{got[1]} expected={table[s][t][0]},{table[s][t][1]}", file=out)
                return EXIT_VERIFY
    print(f"ok pairs={n * n}", file=out)
    return EXIT_OK


def thread_ladder(max_threads: int) -> list[int]:
    ladder, t = [], 1
    while t <= max_threads:
        ladder.append(t)
        t *= 2
    return ladder


def cmd_bench(args, out, err=None) -> int:
    err = err or sys.stderr
    g = load_edge_list(args.graph) if args.graph else generate_random(args.n, args.edge_factor, args.seed)
    print(f"# n={g.num_vertices} m={g.num_edges}", file=out)
    print(BENCH_HEADER, file=out)
    base = None
    times = {}
    idx = None
    for t in thread_ladder(args.max_threads):
        t0 = time.perf_counter()
        idx = _build(g, args, threads=t)
        secs = time.perf_counter() - t0
        base = base if base is not None else secs
        times[t] = secs
        print(f"{t},{secs:.6f},{base / secs:.3f}", file=out)
    if 4 in times and times[4] > SPEEDUP_TARGET * times[1]:
        print(f"WARNING: 4-worker build took {times[4] / times[1]:.2f}x the 1-worker time "
              f"(target <= {SPEEDUP_TARGET})", file=err)
    rng = np.random.default_rng(args.seed)
    n = g.num_vertices
    print(QUERY_HEADER, file=out)
    size = 10
    while size <= max(args.queries, 0):
        pairs = rng.integers(0, n, size=(size, 2)).tolist()
        t0 = time.perf_counter()
        batch_query(idx, pairs, args.threads)
        secs = time.perf_counter() - t0
        print(f"{size},{secs:.6f},{size / secs if secs else float('inf'):.1f}", file=out)
        size *= 10
    return EXIT_OK


COMMANDS = {
    "build": cmd_build,
    "query": cmd_query,
    "batch": cmd_batch,
    "stats": cmd_stats,
    "verify": cmd_verify,
    "bench": cmd_bench,
}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args, out)
    except OracleBoundError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, EdgeListParseError, IndexFormatError, CountOverflowError,
            BatchQueryError, ValueError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
