from ghostedge.graph import Graph
from ghostedge.minors import (MinorModel, find_clique_minor, model_violations, parse_branch_sets,
                              verify_minor_model, write_branch_sets)


def test_petersen_spokes_contract_to_k5():
    g = Graph.petersen()
    sets = [{i, i + 5} for i in range(5)]
    assert verify_minor_model(g, MinorModel.clique(sets))


def test_search_finds_and_refuses():
    assert find_clique_minor(Graph.complete_bipartite(3, 3), 4) is not None
    assert find_clique_minor(Graph.cycle(8), 4) is None
    model = find_clique_minor(Graph.petersen(), 5)
    assert model is not None and verify_minor_model(Graph.petersen(), model)


def test_violations_are_listed():
    g = Graph.path(4)
    problems = model_violations(g, MinorModel.clique([{0, 2}, {1}, {1, 3}]))
    assert any("not connected" in p for p in problems)
    assert any("overlap" in p for p in problems)


def test_branch_set_file_round_trip():
    sets = [frozenset({0, 4}), frozenset({2})]
    text = write_branch_sets(sets, names=["a", "b", "c", "d", "e"])
    assert "# a e" in text
    assert parse_branch_sets(text, 5) == sets
