from __future__ import annotations

import re
from pathlib import Path

import numpy as np
import pytest

from spcindex.graph import Graph, from_edges, generate_random, load_edge_list

DATA = Path(__file__).parent / "data"
SAMPLE_GRAPH = DATA / "sample.txt"
SAMPLE_ORDER_FILE = DATA / "sample_order.txt"
SAMPLE_ORDER = [int(x) for x in SAMPLE_ORDER_FILE.read_text().split()]


def read_reference_labels() -> dict[int, set[tuple[int, int, int]]]:
    """Reference labels for the sample graph, keyed by external id (hubs too)."""
    table = {}
    for line in (DATA / "sample_labels.txt").read_text().splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        owner, rest = line.split(":", 1)
        table[int(owner)] = {tuple(map(int, m)) for m in re.findall(r"\((\d+),(\d+),(\d+)\)", rest)}
    return table


def labels_by_external(idx, g: Graph) -> dict[int, set[tuple[int, int, int]]]:
    """Index labels rewritten with external ids for owner and hub."""
    va = idx.order.vertex_at
    out = {}
    for v, lab in enumerate(idx.labels):
        out[g.external_id(v)] = {(g.external_id(int(va[h])), d, c) for h, d, c in lab}
    return out


def random_corpus(count: int, max_n: int = 64, seed: int = 0) -> list[tuple[int, Graph]]:
    """Random graphs of varied size and density, each tagged with its seed."""
    rng = np.random.default_rng(seed)
    out = []
    for i in range(count):
        n = int(rng.integers(1, max_n + 1))
        ef = float(rng.choice([0.5, 1.0, 1.5, 2.5, 4.0]))
        s = seed * 100_000 + i
        out.append((s, generate_random(n, ef, s)))
    return out


def twin_rich(seed: int) -> Graph:
    """Complete bipartite blocks, cliques and shared-neighbourhood fans glued together."""
    rng = np.random.default_rng(seed)
    edges = []
    n = 0

    def block(kind):
        nonlocal n
        a, b = int(rng.integers(1, 4)), int(rng.integers(2, 5))
        left = list(range(n, n + a))
        right = list(range(n + a, n + a + b))
        n += a + b
        if kind == "biclique":
            edges.extend((x, y) for x in left for y in right)
        else:
            vs = left + right
            edges.extend((x, y) for i, x in enumerate(vs) for y in vs[i + 1:])
        return left + right

    groups = [block("biclique" if rng.random() < 0.5 else "clique") for _ in range(int(rng.integers(2, 5)))]
    for g1, g2 in zip(groups, groups[1:]):
        edges.append((int(rng.choice(g1)), int(rng.choice(g2))))
    # a few isolated twin pairs hanging from one vertex
    hub = int(rng.choice(groups[0]))
    for _ in range(int(rng.integers(0, 3))):
        edges.append((hub, n))
        n += 1
    return from_edges(n, edges)


def tree_rich(seed: int) -> Graph:
    """A small cyclic core with random trees attached, plus a tree-only component."""
    rng = np.random.default_rng(seed)
    core_n = int(rng.integers(3, 8))
    edges = [(i, (i + 1) % core_n) for i in range(core_n)]
    edges.append((0, core_n // 2))
    n = core_n
    for _ in range(int(rng.integers(4, 16))):
        parent = int(rng.integers(0, n))
        edges.append((parent, n))
        n += 1
    root = n
    n += 1
    for _ in range(int(rng.integers(0, 6))):
        parent = int(rng.integers(root, n))
        edges.append((parent, n))
        n += 1
    return from_edges(n, edges)


def layered_gadget(width: int, layers: int) -> Graph:
    """Source, ``layers`` fully connected layers of ``width`` vertices, sink.

    The source-sink count is ``width ** layers``.
    """
    edges = []
    prev = [0]
    n = 1
    for _ in range(layers):
        cur = list(range(n, n + width))
        n += width
        edges.extend((a, b) for a in prev for b in cur)
        prev = cur
    edges.extend((a, n) for a in prev)
    return from_edges(n + 1, edges)


@pytest.fixture
def sample() -> Graph:
    return load_edge_list(SAMPLE_GRAPH)


@pytest.fixture
def reference():
    return read_reference_labels()


# one summary line per acceptance criterion

_CRITERIA: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or (rep.when != "call" and not rep.failed):
        return
    number, title = mark.args
    entry = _CRITERIA.setdefault(number, {"title": title, "passed": True, "secs": 0.0, "notes": []})
    entry["passed"] &= rep.passed
    entry["secs"] += rep.duration
    entry["notes"].extend(v for k, v in item.user_properties if k == "note")


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        e = _CRITERIA[number]
        status = "PASS" if e["passed"] else "FAIL"
        note = f"  [{'; '.join(e['notes'])}]" if e["notes"] else ""
        terminalreporter.write_line(f"criterion {number:>2} {status}  {e['title']} ({e['secs']:.2f}s){note}")
