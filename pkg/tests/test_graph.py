import random
from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, settings, strategies as st

from expertlop.errors import (
    IdenticalLabelsError,
    IncompleteGraphError,
    InputError,
    MissingEdgeError,
    UnknownLabelError,
)
from expertlop.graph import (
    Cycle,
    ExpertGraph,
    LabelSet,
    LinearOrderingGraph,
    RankingGraph,
    curl_check,
    edge_weight,
    find_preference_cycle,
    majority_cycle,
    ranking_edge,
)

from oracles import cycle_sum, directed_cycles, majority_acyclic

F = Fraction


def tri(ab, bc, ca, cls=ExpertGraph):
    return cls.from_edges("ABC", {("A", "B"): ab, ("B", "C"): bc, ("C", "A"): ca})


def test_labelset_rejects_duplicates_and_empty():
    with pytest.raises(InputError):
        LabelSet(("A", "A"))
    with pytest.raises(InputError):
        LabelSet(())


def test_reverse_edge_is_complement():
    g = tri(F(2, 3), F(3, 5), F(1, 7))
    assert g.weight("B", "A") == F(1, 3)
    assert edge_weight(g, "A", "C") == F(6, 7)
    assert g.weight("A", "B") + g.weight("B", "A") == 1


def test_expert_graph_needs_open_interval():
    with pytest.raises(InputError):
        tri(1, F(1, 2), F(1, 2))
    with pytest.raises(InputError):
        tri(0, F(1, 2), F(1, 2))
    g = tri(1, F(1, 2), 0, cls=LinearOrderingGraph)
    assert g.on_boundary
    assert set(g.boundary_edges()) == {("A", "B"), ("A", "C")}


def test_conflicting_orientations_rejected():
    with pytest.raises(InputError):
        ExpertGraph.from_edges("AB", [(("A", "B"), F(1, 3)), (("B", "A"), F(1, 3))])
    g = ExpertGraph.from_edges("AB", [(("A", "B"), F(1, 3)), (("B", "A"), F(2, 3))])
    assert g.weight("A", "B") == F(1, 3)


def test_edge_errors():
    g = ExpertGraph.from_edges("ABC", {("A", "B"): F(1, 2)})
    with pytest.raises(MissingEdgeError):
        g.weight("A", "C")
    with pytest.raises(UnknownLabelError):
        g.weight("A", "Z")
    with pytest.raises(IdenticalLabelsError):
        g.weight("A", "A")


def test_ranking_graph_edges():
    r = RankingGraph(("B", "A", "C"))
    assert ranking_edge(r, "B", "C") == 1
    assert ranking_edge(r, "C", "A") == 0
    g = r.as_graph("ABC")
    assert g.weight("A", "B") == 0 and g.weight("A", "C") == 1
    assert find_preference_cycle(g) is None


def test_ranking_graph_rejects_repeats():
    with pytest.raises(InputError):
        RankingGraph(("A", "A"))


def test_cycle_examples():
    assert str(find_preference_cycle(tri(F(61, 100), F(61, 100), F(61, 100)))) == "A->B->C->A"
    assert find_preference_cycle(tri(F(9, 10), F(9, 10), F(1, 10))) is None
    # opposite orientation is reported from the smallest label
    assert str(find_preference_cycle(tri(F(1, 3), F(1, 3), F(1, 3)))) == "A->C->B->A"


def test_ties_are_not_majority_edges():
    assert find_preference_cycle(tri(F(1, 2), F(2, 3), F(2, 3))) is None


def test_find_preference_cycle_requires_complete_graph():
    g = ExpertGraph.from_edges("ABC", {("A", "B"): F(2, 3)})
    with pytest.raises(IncompleteGraphError):
        find_preference_cycle(g)
    assert majority_cycle(g) is None


def test_cycle_validation():
    with pytest.raises(InputError):
        Cycle(("A", "B"))
    with pytest.raises(InputError):
        Cycle(("A", "B", "A"))
    assert Cycle(("A", "B", "C")).arcs() == [("A", "B"), ("B", "C"), ("C", "A")]


def test_curl_check_values():
    res = curl_check(tri(F(2, 3), F(2, 3), F(2, 3)), Cycle(("A", "B", "C")))
    assert res.sum == 2 and res.satisfied and res.margin == 0
    res = curl_check(tri(F(3, 4), F(3, 4), F(3, 4)), Cycle(("A", "B", "C")))
    assert res.sum == F(9, 4) and not res.satisfied


def _random_complete(rng, n, grid=6):
    labels = [f"L{i}" for i in range(n)]
    edges = {}
    for i in range(n):
        for j in range(i + 1, n):
            edges[(labels[i], labels[j])] = F(rng.randint(1, grid - 1), grid)
    return labels, ExpertGraph.from_edges(labels, edges)


def test_cycle_detection_matches_topological_sort():
    rng = random.Random(7)
    for _ in range(600):
        n = rng.randint(3, 6)
        labels, g = _random_complete(rng, n)
        found = find_preference_cycle(g)
        assert (found is None) == majority_acyclic(labels, g.weight)
        if found is not None:
            assert all(g.weight(a, b) > F(1, 2) for a, b in found.arcs())


def test_found_cycle_is_lexicographically_minimal():
    rng = random.Random(11)
    for _ in range(150):
        labels, g = _random_complete(rng, rng.randint(3, 5))
        found = find_preference_cycle(g)
        if found is None:
            continue
        idx = {lab: i for i, lab in enumerate(labels)}
        best = None
        for k in range(3, len(labels) + 1):
            for perm in permutations(labels, k):
                arcs = [(perm[i], perm[(i + 1) % k]) for i in range(k)]
                if all(g.weight(a, b) > F(1, 2) for a, b in arcs):
                    key = [idx[x] for x in perm]
                    if best is None or key < best:
                        best = key
        assert [idx[x] for x in found.vertices] == best


@settings(max_examples=60, deadline=None)
@given(st.permutations(["A", "B", "C", "D", "E"]))
def test_ranking_graphs_satisfy_every_curl_bound(order):
    g = RankingGraph(tuple(order)).as_graph("ABCDE")
    for cyc in directed_cycles(list("ABCDE"), 5):
        assert cycle_sum(g.weight, cyc) <= len(cyc) - 1
