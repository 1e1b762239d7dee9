import random

import pytest

from conftest import random_connected
from ghostedge.decomposition import covers_pair, validate_td, width
from ghostedge.ghost import (DefinitionError, examine, exists_excluding_td, ghost_bruteforce,
                             is_ghost_edge, search_counterexamples, sufficient_condition)
from ghostedge.graph import Graph, bits, mask_of, non_edges
from ghostedge.streams import connected_graphs
from ghostedge.treewidth import fill_graph, treewidth_dp


def test_four_cycle_diagonal_is_not_ghost():
    g = Graph.cycle(4)
    verdict = is_ghost_edge(g, 0, 2, 2)
    assert not verdict.is_ghost
    td = verdict.excluding_td
    assert validate_td(g, td).valid and width(td) <= 2 and not covers_pair(td, 0, 2)
    assert not ghost_bruteforce(g, 0, 2, 2)


def test_k4_minus_edge_is_not_ghost():
    g = Graph(4, [(0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    assert not is_ghost_edge(g, 0, 1, 2).is_ghost


def test_k23_is_ghost_at_two_only():
    g = Graph.complete_bipartite(2, 3)
    verdict = is_ghost_edge(g, 0, 1, 2)
    assert verdict.is_ghost and verdict.explained
    assert verdict.menger.count == 3 and sufficient_condition(g, 0, 1, 2)
    assert "exhausted" in verdict.certificate
    assert not is_ghost_edge(g, 0, 1, 3).is_ghost


def test_refusals():
    with pytest.raises(DefinitionError):
        is_ghost_edge(Graph.path(2), 0, 1, 1)
    with pytest.raises(DefinitionError):
        is_ghost_edge(Graph(3, [(0, 1)]), 0, 2, 2)
    with pytest.raises(DefinitionError):
        is_ghost_edge(Graph.complete_bipartite(3, 3), 0, 1, 2)
    with pytest.raises(DefinitionError):
        ghost_bruteforce(Graph.complete_bipartite(3, 3), 0, 1, 2)
    with pytest.raises(ValueError):
        is_ghost_edge(Graph.cycle(4), 0, 0, 2)


def test_ghost_is_antitone_in_k():
    # fewer decompositions at smaller k, so a ghost edge at k+1 is one at k
    rng = random.Random(31)
    for _ in range(80):
        g = random_connected(rng, 4, 8)
        pairs = non_edges(g)
        if not pairs:
            continue
        x, y = rng.choice(pairs)
        tw = treewidth_dp(g)[0]
        verdicts = [is_ghost_edge(g, x, y, k, treewidth=tw).is_ghost for k in range(tw, g.n)]
        assert verdicts == sorted(verdicts, reverse=True)
        assert not verdicts[-1]


def _fill_by_paths(g, order, x, y):
    """xy is a fill edge iff some x-y path runs through vertices all
    eliminated before both x and y."""
    pos = {v: i for i, v in enumerate(order)}
    early = mask_of(v for v in range(g.n) if pos[v] < min(pos[x], pos[y]))
    seen = frontier = (1 << x)
    while frontier:
        grow = 0
        for v in bits(frontier):
            grow |= g.nbr[v]
        if grow >> y & 1:
            return True
        frontier = grow & early & ~seen
        seen |= frontier
    return False


def test_fill_edge_path_characterisation():
    rng = random.Random(32)
    for _ in range(200):
        g = random_connected(rng, 3, 8)
        order = list(range(g.n))
        rng.shuffle(order)
        f = fill_graph(g, order)
        for x, y in non_edges(g):
            assert f.has_edge(x, y) == _fill_by_paths(g, order, x, y)


def test_excluding_td_none_when_ghost():
    assert exists_excluding_td(Graph.complete_bipartite(2, 3), 0, 1, 2) is None


def test_small_counterexample_reverifies():
    # K3,3 plus one edge inside a side: {4, 5, 6} must become a clique at width 3
    g = Graph(6, [(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5), (3, 5)])
    hits = examine(g, 3)
    assert any((h.x, h.y, h.k) == (4, 5, 3) and h.menger == 3 and h.rechecked for h in hits)
    assert ghost_bruteforce(g, 4, 5, 3)


def test_search_is_deterministic_across_jobs():
    one = search_counterexamples(connected_graphs(5), 3, jobs=1)
    two = search_counterexamples(connected_graphs(5), 3, jobs=2)
    assert [(h.graph, h.x, h.y, h.k) for h in one] == [(h.graph, h.x, h.y, h.k) for h in two]


def test_search_skips_disconnected_input():
    k33 = Graph(6, [(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5), (3, 5)])
    hits = search_counterexamples([Graph(3, [(0, 1)]), k33], 3)
    assert [(h.x, h.y, h.k) for h in hits] == [(3, 4, 3), (4, 5, 3)]
