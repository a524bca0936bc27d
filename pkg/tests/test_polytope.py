import random
from fractions import Fraction
from itertools import permutations

import pytest

from expertlop.decomposition import RankingDistribution, synthesize_log
from expertlop.errors import InputError
from expertlop.graph import ExpertGraph, LinearOrderingGraph, RankingGraph
from expertlop.polytope import PolytopeQuery, bound_missing_edge, curl_scan, membership
from expertlop.tables import ProbabilityTable, expert_graph

from oracles import cycle_sum, directed_cycles, random_rows, ranking_system, vertex_range

F = Fraction


def cyc(w):
    return ExpertGraph.from_edges("ABC", {("A", "B"): w, ("B", "C"): w, ("C", "A"): w})


def test_two_thirds_cycle_is_on_the_boundary():
    v = membership(cyc(F(2, 3)))
    assert v.feasible and not v.strictly_interior and v.interior_margin == 0


def test_three_quarters_cycle_is_infeasible():
    v = membership(cyc(F(3, 4)))
    assert not v.feasible and v.witness is None


def test_interior_example():
    t = ProbabilityTable.build("ABC", [[".90", ".09", ".01"], [".01", ".90", ".09"], [".09", ".01", ".90"]])
    v = membership(expert_graph(t))
    assert v.feasible and v.strictly_interior and v.interior_margin > 0


def test_ranking_vertex_is_not_interior():
    v = membership(RankingGraph(("B", "C", "A")).as_graph("ABC"))
    assert v.feasible and not v.strictly_interior


def test_witness_reproduces_graph():
    rng = random.Random(1)
    t = ProbabilityTable.build("ABCD", random_rows(rng, 4, 2))
    g = expert_graph(t)
    v = membership(g)
    assert synthesize_log(v.witness).same_weights(g)
    assert v.witness.min_weight() == v.interior_margin


def test_bound_example():
    g = ExpertGraph.from_edges("ABC", {("A", "B"): F(2, 3), ("B", "C"): F(2, 3)})
    v = bound_missing_edge(PolytopeQuery(g, ("A", "C")))
    assert v.bounds == (F(1, 3), 1)
    v = bound_missing_edge(PolytopeQuery(g, ("C", "A")))
    assert v.bounds == (0, F(2, 3))


def test_bound_infeasible_constraints():
    g = ExpertGraph.from_edges("ABCD", {("A", "B"): F(9, 10), ("B", "C"): F(9, 10), ("C", "A"): F(9, 10)})
    v = bound_missing_edge(PolytopeQuery(g, ("A", "D")))
    assert not v.feasible and v.bounds is None


def test_query_rejects_existing_target():
    with pytest.raises(InputError):
        PolytopeQuery(cyc(F(1, 2)), ("A", "C"))


def _random_partial(rng, labels, grid=8, keep=0.7):
    edges = {}
    for i in range(len(labels)):
        for j in range(i + 1, len(labels)):
            if rng.random() < keep:
                edges[(labels[i], labels[j])] = F(rng.randint(0, grid), grid)
    return edges


def test_three_label_bounds_match_vertex_enumeration():
    rng = random.Random(77)
    labels = ["A", "B", "C"]
    checked = 0
    while checked < 60:
        edges = _random_partial(rng, labels)
        missing = [(a, b) for i, a in enumerate(labels) for b in labels[i + 1:] if (a, b) not in edges]
        if not missing:
            continue
        target = missing[0]
        g = LinearOrderingGraph.from_edges(labels, edges)
        perms, A, b = ranking_system(labels, edges)
        c = [1 if r.index(target[0]) < r.index(target[1]) else 0 for r in perms]
        ref = vertex_range(A, b, c)
        v = bound_missing_edge(PolytopeQuery(g, target))
        if ref is None:
            assert not v.feasible
        else:
            assert v.feasible and v.bounds == ref
        checked += 1


def test_auto_and_exact_membership_agree():
    rng = random.Random(31)
    labels = list("ABCDE")
    for _ in range(12):
        g = LinearOrderingGraph.from_edges(labels, _random_partial(rng, labels, grid=4, keep=0.8))
        auto, exact = membership(g), membership(g, method="exact")
        assert auto.feasible == exact.feasible
        assert auto.interior_margin == exact.interior_margin


def test_mixtures_are_always_feasible():
    rng = random.Random(4)
    labels = list("ABCD")
    perms = list(permutations(labels))
    for _ in range(15):
        chosen = rng.sample(perms, rng.randint(1, 6))
        dist = RankingDistribution(labels, {r: F(1, len(chosen)) for r in chosen})
        assert membership(synthesize_log(dist)).feasible


def test_curl_scan_matches_brute_force():
    rng = random.Random(8)
    labels = list("ABCDE")
    for _ in range(20):
        g = LinearOrderingGraph.from_edges(labels, _random_partial(rng, labels, keep=1))
        scan = curl_scan(g, 4)
        assert len(scan) == 10 + 15  # 3-cycles and 4-cycles of K5, one orientation each
        expected_violations = 0
        for c in directed_cycles(labels, 4):
            if cycle_sum(g.weight, c) > len(c) - 1:
                expected_violations += 1
        assert sum(not r.satisfied for r in scan) == expected_violations
        margins = [r.margin for r in scan]
        assert margins == sorted(margins, reverse=True)


def test_curl_scan_skips_missing_edges():
    g = ExpertGraph.from_edges("ABCD", {("A", "B"): F(1, 2), ("B", "C"): F(1, 2), ("C", "D"): F(1, 2)})
    assert curl_scan(g) == []


def test_curl_scan_single_cycle_example():
    t = ProbabilityTable.build("ABC", [[".90", ".09", ".01"], [".01", ".90", ".09"], [".09", ".01", ".90"]])
    (only,) = curl_scan(expert_graph(t))
    assert str(only.cycle) == "A->B->C->A"
    assert only.sum == 3 * (F(90, 99) + F(1, 91) + F(9, 10)) / 3
    assert only.satisfied


def test_curl_scan_rejects_short_cycles():
    with pytest.raises(InputError):
        curl_scan(cyc(F(1, 2)), 2)
