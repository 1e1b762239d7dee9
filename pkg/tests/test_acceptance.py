"""Acceptance criteria, one test per criterion.

Each test prints a pass/fail line; the terminal summary (see conftest) lists
every criterion once more at the end of the run.
"""

import io
import random
import shutil
import time
from collections import deque
from contextlib import redirect_stdout

from conftest import CORPUS, connected_subset, ghost_sample, random_connected
from ghostedge.cli import run
from ghostedge.connectivity import enumerate_separators, menger_count
from ghostedge.decomposition import (TreeDecomposition, covers_pair, ordering_to_td, parse_td,
                                     restrict_td, restricted_nodes, validate_td, width, write_td)
from ghostedge.ghost import ghost_bruteforce, is_ghost_edge, search_counterexamples
from ghostedge.graph import Graph, induced_subgraph, non_edges, parse_gr, write_gr
from ghostedge.paper import fixture_path, paper_graph, verify_paper
from ghostedge.streams import connected_graphs
from ghostedge.treewidth import treewidth_bruteforce, treewidth_dp

SEED = 20261015


def _say(num, ok, detail):
    print(f"criterion {num}: {'PASS' if ok else 'FAIL'} ({detail})")


def _tw(g):
    return treewidth_dp(g)[0]


_SAMPLE = None


def _sample():
    global _SAMPLE
    if _SAMPLE is None:
        _SAMPLE = ghost_sample(SEED, 200, _tw)
    return _SAMPLE


def test_criterion_1_verify_paper():
    start = time.perf_counter()
    f = paper_graph(check=True)
    report = verify_paper(f)
    elapsed = time.perf_counter() - start
    stages = {s.name: s for s in report.stages}
    checks = report.battery.checks
    x, y = f.vs("x", "y")
    ok = (report.ok and len(checks) == 9 and all(c.ok for c in checks)
          and stages["treewidth"].detail == "treewidth: 4"
          and menger_count(f.graph, x, y).count == 4 and elapsed < 60)
    _say(1, ok, f"{len(checks)} checks, stages {[s.name for s in report.stages]}, {elapsed:.1f}s")
    for line in report.lines():
        print(line)
    assert len(checks) == 9 and all(c.ok for c in checks)
    assert _tw(f.graph) == 4
    assert is_ghost_edge(f.graph, x, y, 4).is_ghost
    assert stages["sufficient-condition"].ok
    assert stages["gluing"].ok
    assert report.ok
    assert elapsed < 60


def test_criterion_2_treewidth_oracle():
    rng = random.Random(SEED)
    start = time.perf_counter()
    bad = []
    for _ in range(200):
        g = random_connected(rng, 4, 8)
        if _tw(g) != treewidth_bruteforce(g):
            bad.append(g)
    elapsed = time.perf_counter() - start
    _say(2, not bad and elapsed < 60, f"200 graphs, {len(bad)} disagreements, {elapsed:.1f}s")
    assert not bad
    assert elapsed < 60


def test_criterion_3_ghost_oracle():
    disagree, bad_cert, runs = [], [], 0
    for g, x, y, ks in _sample():
        for k in ks:
            runs += 1
            verdict = is_ghost_edge(g, x, y, k)
            if verdict.is_ghost != ghost_bruteforce(g, x, y, k):
                disagree.append((g, x, y, k))
            if not verdict.is_ghost:
                td = verdict.excluding_td
                if not (validate_td(g, td).valid and width(td) <= k and not covers_pair(td, x, y)):
                    bad_cert.append((g, x, y, k))
    ok = not disagree and not bad_cert
    _say(3, ok, f"200 instances, {runs} (instance, k) runs, {len(disagree)} disagreements, "
                f"{len(bad_cert)} bad certificates")
    assert not disagree
    assert not bad_cert


def test_criterion_4_sufficiency():
    k23 = Graph.complete_bipartite(2, 3)
    pinned = menger_count(k23, 0, 1).count == 3 and is_ghost_edge(k23, 0, 1, 2).is_ghost
    violations, applicable = [], 0
    # the sampled pair first, then every other non-edge of the sampled graphs
    for g, x0, y0, ks in _sample():
        tw = ks.start
        for x, y in [(x0, y0)] + [p for p in non_edges(g) if p != (x0, y0)]:
            paths = menger_count(g, x, y).count
            for k in ks:
                if paths >= k + 1:
                    applicable += 1
                    if not is_ghost_edge(g, x, y, k, treewidth=tw).is_ghost:
                        violations.append((g, x, y, k))
    _say(4, pinned and not violations,
         f"K2,3 k=2 pinned: {pinned}, {applicable} applicable runs, {len(violations)} violations")
    assert pinned
    assert applicable > 0
    assert not violations


def _tree_connected(td, nodes):
    nodes = set(nodes)
    if not nodes:
        return False
    adj = td.neighbours()
    start = next(iter(nodes))
    seen, queue = {start}, deque([start])
    while queue:
        a = queue.popleft()
        for b in adj[a]:
            if b in nodes and b not in seen:
                seen.add(b)
                queue.append(b)
    return seen == nodes


def _padded(td, rng, extra):
    """Hang ``extra`` new nodes off random nodes, each with a random subset of
    its parent's bag; the result is still a valid decomposition."""
    bags, edges = list(td.bags), list(td.edges)
    for _ in range(extra):
        parent = rng.randrange(len(bags))
        bag = [v for v in sorted(bags[parent]) if rng.random() < 0.5]
        bags.append(frozenset(bag))
        edges.append((parent, len(bags) - 1))
    return TreeDecomposition(tuple(bags), tuple(edges), td.host_n)


def test_criterion_5_restriction():
    rng = random.Random(SEED + 5)
    violations = []
    for _ in range(150):
        g = random_connected(rng, 2, 9)
        order = list(range(g.n))
        rng.shuffle(order)
        td = _padded(ordering_to_td(g, order), rng, rng.randint(0, 4))
        assert validate_td(g, td).valid
        h = connected_subset(rng, g)
        sub, _ = induced_subgraph(g, h)
        out = restrict_td(g, td, h)
        if not (validate_td(sub, out).valid and width(out) <= width(td)
                and _tree_connected(td, restricted_nodes(td, h))):
            violations.append((g, td, h))
    _say(5, not violations, f"150 triples, {len(violations)} violations")
    assert not violations


def test_criterion_6_format_round_trip():
    files = sorted(CORPUS.iterdir())
    names = {p.name for p in files}
    bad = []
    for p in files:
        raw = p.read_bytes()
        if p.suffix == ".gr":
            again = write_gr(parse_gr(raw)).encode()
        else:
            again = write_td(parse_td(raw)).encode()
        if again != raw:
            bad.append(p.name)
    for name in ("paper_G.gr", "paper_H1.td"):
        if (CORPUS / name).read_bytes() != fixture_path(name).read_bytes():
            bad.append(name + " (differs from the shipped fixture)")
    ok = len(files) == 20 and {"paper_G.gr", "paper_H1.td"} <= names and not bad
    _say(6, ok, f"{len(files)} files, mismatches: {bad}")
    assert len(files) == 20
    assert {"paper_G.gr", "paper_H1.td"} <= names
    assert not bad


def test_criterion_7_separators(fixture):
    g = fixture.graph
    x, y = fixture.vs("x", "y")
    start = time.perf_counter()
    found = enumerate_separators(g, x, y, 4)
    elapsed = time.perf_counter() - start
    a = fixture.named_sets["A"]
    ok = found == [a] and elapsed < 5
    _say(7, ok, f"{[sorted(g.name(v) for v in s) for s in found]}, {elapsed:.2f}s")
    assert found == [a]
    assert sorted(g.name(v) for v in a) == ["a1", "a2", "a3", "a4"]
    assert elapsed < 5


def test_criterion_8_search(tmp_path):
    start = time.perf_counter()
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = run(["search", "--enumerate-max-n", "6", "--k-max", "3"])
    elapsed = time.perf_counter() - start
    hits = search_counterexamples(connected_graphs(6), 3, recheck=False)
    recheck = all(ghost_bruteforce(h.graph, h.x, h.y, h.k) for h in hits)
    cli_count = int(buf.getvalue().strip().splitlines()[-1].split(":")[1])

    for name in ("paper_G.gr", "paper_G.labels"):
        shutil.copy(fixture_path(name), tmp_path / name)
    buf2 = io.StringIO()
    with redirect_stdout(buf2):
        code2 = run(["search", "--dir", str(tmp_path), "--k-max", "4"])
    paper_hits = [line for line in buf2.getvalue().splitlines() if line.startswith("counterexample:")]
    emits = any("x=x y=y k=4" in line for line in paper_hits)

    ok = code == 0 and code2 == 0 and elapsed < 600 and recheck and cli_count == len(hits) and emits
    _say(8, ok, f"n<=6: {len(hits)} hits all re-verified={recheck} in {elapsed:.1f}s; "
                f"paper graph emits (x, y, 4): {emits}")
    assert code == 0 and code2 == 0
    assert elapsed < 600
    assert cli_count == len(hits)
    assert recheck
    assert emits
