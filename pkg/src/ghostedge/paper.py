"""The 24-vertex ghost-edge counterexample, its fixtures and its checks.

``x`` and ``y`` are joined by exactly four internally disjoint paths, the
graph has treewidth 4, and still every width-4 tree decomposition puts ``x``
and ``y`` in a common bag. Removing ``x``, ``y`` and the edge ``d2 d4``
leaves two isomorphic 2-connected halves; ``H1`` and ``H2`` are the halves
together with ``x`` and ``y``.

The vertex and edge lists are reconstructed from the structural facts the
construction has to satisfy; :func:`consistency_battery` re-derives each of
those facts from the files, so a wrong fixture cannot load silently.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from importlib import resources

from .connectivity import enumerate_separators, menger_count
from .decomposition import (glue_tds, parse_td, relabel_td, validate_td,
                            width as td_width)
from .ghost import is_ghost_edge, sufficient_condition
from .graph import (component_masks, delete, induced_subgraph, is_biconnected, is_connected,
                    is_isomorphic, mask_of, parse_gr, parse_labels, bits, write_gr)
from .minors import MinorModel, model_violations, parse_branch_sets
from .treewidth import treewidth_dp

FIXTURE_FILES = ("paper_G.gr", "paper_G.labels", "paper_H1.td", "paper_K5.branchsets")
PINNED_SHA256 = "3fb299e8b381f29e0c2a002827f24259fe27931041aecece059cb66d4384930a"


class FixtureError(RuntimeError):
    pass


def fixture_text(name):
    return resources.files("ghostedge").joinpath("data").joinpath(name).read_text()


def fixture_path(name):
    return resources.files("ghostedge").joinpath("data").joinpath(name)


@dataclass
class PaperFixture:
    graph: object
    h1_td: object
    k5_model: MinorModel
    named_sets: dict = field(default_factory=dict)

    def v(self, label):
        return self.graph.vertex(label)

    def vs(self, *labels):
        return [self.graph.vertex(s) for s in labels]


def make_fixture(graph, h1_td, k5_model):
    """Bundle the pieces and derive the named vertex sets from the labels."""
    f = PaperFixture(graph, h1_td, k5_model)
    a = frozenset(f.vs("a1", "a2", "a3", "a4"))
    b_s = a | {f.v("x")}
    h = b_s | frozenset(f.vs("b1", "b2", "b3", "b4", "d1", "d2", "d3", "d4"))
    f.named_sets = {"A": a, "B_s": b_s, "H": h}
    return f


def load_fixture():
    """Read the shipped fixture files without checking them."""
    g = parse_gr(fixture_text("paper_G.gr"))
    g = g.with_labels(parse_labels(fixture_text("paper_G.labels"), g.n))
    h1_td = parse_td(fixture_text("paper_H1.td"))
    model = MinorModel.clique(parse_branch_sets(fixture_text("paper_K5.branchsets"), g.n))
    return make_fixture(g, h1_td, model)


def graph_digest(g):
    return hashlib.sha256(write_gr(g).encode()).hexdigest()


# -- halves ------------------------------------------------------------------

def halves(f):
    """Components of G - {x, y} - d2d4 as vertex sets, plus the ones holding
    ``a1`` and ``a3`` (None when missing)."""
    g = f.graph
    x, y, d2, d4 = f.vs("x", "y", "d2", "d4")
    rest, ids = delete(g, [x, y], [(d2, d4)])
    comps = [frozenset(ids[v] for v in bits(c)) for c in component_masks(rest)]
    a1, a3 = f.vs("a1", "a3")
    c1 = next((c for c in comps if a1 in c), None)
    c2 = next((c for c in comps if a3 in c), None)
    return comps, c1, c2


def h_sides(f):
    """``(V(H1), V(H2))``: each half plus x and y."""
    _, c1, c2 = halves(f)
    if c1 is None or c2 is None or c1 == c2:
        raise FixtureError("a1 and a3 do not lie in two different halves")
    xy = frozenset(f.vs("x", "y"))
    return c1 | xy, c2 | xy


def h2_decomposition(f):
    """Mirror the H1 decomposition onto H2 through an isomorphism fixing x and
    y and sending d2 to d4. Returns ``(td, mapping)`` in H2's induced ids."""
    g = f.graph
    v1, v2 = h_sides(f)
    h1, ids1 = induced_subgraph(g, v1)
    h2, ids2 = induced_subgraph(g, v2)
    pin = {ids1.index(f.v(a)): ids2.index(f.v(b)) for a, b in (("x", "x"), ("y", "y"), ("d2", "d4"))}
    iso = is_isomorphic(h1, h2, fixed=pin)
    if iso is None:
        return None, None
    return relabel_td(f.h1_td, iso, h2.n), iso


def glued_decomposition(f):
    """Width-4 decomposition of G from the H1 and H2 decompositions joined
    through a new bag {x, y, d2, d4}."""
    g = f.graph
    v1, v2 = h_sides(f)
    _, ids1 = induced_subgraph(g, v1)
    _, ids2 = induced_subgraph(g, v2)
    td2, _ = h2_decomposition(f)
    if td2 is None:
        raise FixtureError("H1 and H2 are not isomorphic with x, y fixed and d2 -> d4")
    td1 = relabel_td(f.h1_td, ids1, g.n)
    td2 = relabel_td(td2, ids2, g.n)
    x, y, d2, d4 = f.vs("x", "y", "d2", "d4")
    s1 = next(i for i, b in enumerate(td1.bags) if {x, y, d2} <= b)
    s2 = next(i for i, b in enumerate(td2.bags) if {x, y, d4} <= b)
    return glue_tds(td1, td2, s1, s2, {x, y, d2, d4})


# -- consistency battery -----------------------------------------------------

@dataclass
class Check:
    name: str
    fact: str
    ok: bool
    detail: str = ""


@dataclass
class BatteryReport:
    checks: list

    @property
    def ok(self):
        return all(c.ok for c in self.checks)

    def failed(self):
        return [c for c in self.checks if not c.ok]


def _guard(fn):
    try:
        return fn()
    except (KeyError, ValueError, StopIteration, FixtureError) as exc:
        return False, f"{type(exc).__name__}: {exc}"


def consistency_battery(f):
    """Run the nine structural checks; never raises on a bad fixture."""
    g = f.graph
    checks = []

    def run(name, fact, fn):
        ok, detail = _guard(fn)
        checks.append(Check(name, fact, bool(ok), detail))

    def split():
        comps, c1, c2 = halves(f)
        ok = len(comps) == 2 and c1 is not None and c2 is not None and c1 != c2
        return ok, f"{len(comps)} components"

    def two_connected():
        comps, _, _ = halves(f)
        flags = [is_biconnected(induced_subgraph(g, c)[0]) for c in comps]
        return len(comps) == 2 and all(flags), f"2-connected: {flags}"

    def isomorphic():
        td2, _ = h2_decomposition(f)
        return td2 is not None, "H1 -> H2 with x->x, y->y, d2->d4"

    def menger():
        count = menger_count(g, f.v("x"), f.v("y")).count
        return count == 4, f"menger={count}"

    def separators():
        found = enumerate_separators(g, f.v("x"), f.v("y"), 4)
        names = [sorted(g.name(v) for v in s) for s in found]
        return found == [f.named_sets["A"]], f"separators of size <= 4: {names}"

    def minor():
        problems = model_violations(g, f.k5_model)
        ok = not problems and f.k5_model.pattern.n == 5
        return ok, "; ".join(problems) or "K5 model verified"

    def h1_decomposition_check():
        v1, _ = h_sides(f)
        h1, ids = induced_subgraph(g, v1)
        rep = validate_td(h1, f.h1_td)
        trio = [ids.index(v) for v in f.vs("x", "y", "d2")]
        together = any(set(trio) <= b for b in f.h1_td.bags)
        ok = rep.valid and rep.width == 4 and together
        return ok, f"valid={rep.valid} width={rep.width} x,y,d2 co-bagged={together}"

    def boundary_neighbours():
        b_s = f.named_sets["B_s"]
        outside = mask_of(f.named_sets["H"] - b_s)
        lonely = [g.name(v) for v in sorted(b_s) if not g.nbr[v] & outside]
        return not lonely, f"without neighbour in V(H)-B_s: {lonely}"

    def rest_connected():
        inner = f.named_sets["H"] - f.named_sets["B_s"]
        return is_connected(g, mask_of(inner)), "H - B_s connected"

    run("split", "G - {x, y} - d2d4 has two components, containing a1 and a3", split)
    run("two-connected", "both components are 2-connected", two_connected)
    run("isomorphic", "H1 and H2 are isomorphic", isomorphic)
    run("menger", "four internally disjoint (x, y)-paths", menger)
    run("separators", "the only x-y separator of size <= 4 is A", separators)
    run("k5-minor", "the branch sets form a K5 minor", minor)
    run("h1-decomposition", "width-4 decomposition of H1 with x, y, d2 in one bag", h1_decomposition_check)
    run("b_s-neighbours", "each vertex of B_s has a neighbour in V(H) - B_s", boundary_neighbours)
    run("h-minus-b_s", "H - B_s is connected", rest_connected)
    return BatteryReport(checks)


def paper_graph(check=True):
    """Load the fixture; with ``check``, refuse it unless the battery passes
    and the graph matches the pinned digest."""
    f = load_fixture()
    if check:
        digest = graph_digest(f.graph)
        if digest != PINNED_SHA256:
            raise FixtureError(f"paper_G.gr digest {digest} differs from the pinned one")
        g = f.graph
        x, y, d2, d4 = f.vs("x", "y", "d2", "d4")
        if g.has_edge(x, y):
            raise FixtureError("xy must be a non-edge")
        v1, v2 = h_sides(f)
        if v1 & v2 != {x, y}:
            raise FixtureError("V(H1) and V(H2) must meet exactly in {x, y}")
        crossing = [(u, v) for u, v in g.edges
                    if (u in v1 - {x, y} and v in v2 - {x, y}) or (v in v1 - {x, y} and u in v2 - {x, y})]
        if crossing != [(min(d2, d4), max(d2, d4))]:
            raise FixtureError("d2d4 must be the only edge between the two halves")
        report = consistency_battery(f)
        if not report.ok:
            bad = report.failed()[0]
            raise FixtureError(f"check {bad.name!r} failed ({bad.fact}): {bad.detail}")
    return f


# -- end-to-end verification -------------------------------------------------

@dataclass
class Stage:
    name: str
    ok: bool
    detail: str


@dataclass
class PaperReport:
    stages: list
    battery: BatteryReport | None = None

    @property
    def ok(self):
        return all(s.ok for s in self.stages)

    def lines(self):
        out = []
        if self.battery is not None:
            for c in self.battery.checks:
                out.append(f"  [{'pass' if c.ok else 'FAIL'}] {c.name}: {c.fact} ({c.detail})")
        for s in self.stages:
            out.append(f"[{'pass' if s.ok else 'FAIL'}] {s.name}: {s.detail}")
        out.append(f"overall: {'pass' if self.ok else 'FAIL'}")
        return out


def verify_paper(fixture=None):
    """Battery, treewidth 4, glued decomposition, ghost decision, and the
    failure of the disjoint-paths condition, in that order."""
    f = fixture if fixture is not None else paper_graph(check=False)
    g = f.graph
    x, y = f.vs("x", "y")
    stages = []
    battery = consistency_battery(f)
    stages.append(Stage("battery", battery.ok,
                        f"{sum(c.ok for c in battery.checks)}/{len(battery.checks)} checks pass"))

    tw, _ = treewidth_dp(g)
    stages.append(Stage("treewidth", tw == 4, f"treewidth: {tw}"))

    try:
        glued = glued_decomposition(f)
        rep = validate_td(g, glued)
        ok = rep.valid and td_width(glued) == 4
        detail = f"glued decomposition valid={rep.valid} width={td_width(glued)}"
    except (FixtureError, KeyError, StopIteration, ValueError) as exc:
        ok, detail = False, f"gluing failed: {exc}"
    stages.append(Stage("gluing", ok, detail))

    if tw is not None and tw <= 4:
        verdict = is_ghost_edge(g, x, y, 4, treewidth=tw)
        stages.append(Stage("ghost", verdict.is_ghost,
                            f"xy is {'' if verdict.is_ghost else 'not '}a 4-ghost-edge"))
    else:
        verdict = None
        stages.append(Stage("ghost", False, "skipped: treewidth exceeds 4"))

    paths = menger_count(g, x, y).count
    suff = sufficient_condition(g, x, y, 4)
    stages.append(Stage("sufficient-condition", not suff,
                        f"menger={paths}, at least 5 disjoint paths: {'yes' if suff else 'no'}"))

    refuted = verdict is not None and verdict.is_ghost and not suff
    stages.append(Stage(
        "conclusion", refuted,
        "refuted: xy has at most k=4 internally disjoint paths yet is a 4-ghost-edge"
        if refuted else "not established"))
    return PaperReport(stages, battery)

