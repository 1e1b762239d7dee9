import random
from pathlib import Path

import pytest

from ghostedge.graph import Graph, bits, is_connected, non_edges
from ghostedge.paper import load_fixture

CORPUS = Path(__file__).parent / "corpus"

# criterion number -> (title, outcome); filled in as acceptance tests report
_CRITERIA = {}


def random_graph(rng, n, p):
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


def random_connected(rng, n_lo=1, n_hi=8):
    while True:
        g = random_graph(rng, rng.randint(n_lo, n_hi), rng.uniform(0.2, 0.8))
        if is_connected(g):
            return g


def ghost_sample(seed, count, tw_of):
    """``count`` draws of (graph, x, y, k-range) with n <= 8 and tw <= n - 2."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        g = random_connected(rng, 4, 8)
        pairs = non_edges(g)
        if not pairs:
            continue
        tw = tw_of(g)
        if tw > g.n - 2:
            continue
        x, y = rng.choice(pairs)
        out.append((g, x, y, range(tw, g.n - 1)))
    return out


def connected_subset(rng, g):
    """A random vertex set inducing a connected subgraph, grown from a seed."""
    start = rng.randrange(g.n)
    chosen = 1 << start
    target = rng.randint(1, g.n)
    while bin(chosen).count("1") < target:
        border = 0
        for v in bits(chosen):
            border |= g.nbr[v]
        border &= ~chosen
        if not border:
            break
        chosen |= 1 << rng.choice(list(bits(border)))
    return sorted(bits(chosen))


@pytest.fixture(scope="session")
def fixture():
    return load_fixture()


def pytest_runtest_logreport(report):
    name = report.nodeid.rsplit("::", 1)[-1]
    if "test_acceptance" not in report.nodeid or not name.startswith("test_criterion_"):
        return
    if report.when == "call" or report.outcome != "passed":
        num = int(name.split("_")[2])
        title = " ".join(name.split("_")[3:])
        prev = _CRITERIA.get(num, (title, "PASS"))[1]
        _CRITERIA[num] = (title, "FAIL" if report.outcome != "passed" or prev == "FAIL" else "PASS")


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_CRITERIA):
        title, outcome = _CRITERIA[num]
        terminalreporter.write_line(f"criterion {num} {outcome}: {title}")
