"""Recompute every worked number of the covariate-shift / causal paradox examples.

:func:`reproduction_report` returns plain data (section -> list of entries) so
the CLI can print it as text or JSON. Output order is fixed; the report is
byte-identical across runs.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations

from .decomposition import (
    RankingDistribution,
    complement_product_weight,
    decompose_state,
    prefix_step,
    synthesize_log,
)
from .graph import ExpertGraph, RankingGraph, find_preference_cycle
from .polytope import PolytopeQuery, bound_missing_edge, curl_scan, membership
from .rational import fmt
from .scenarios import (
    backdoor_do,
    ate,
    causal_table,
    covariate_shift_table,
    faithfulness_check,
    greek_table,
    ipw_ate,
    reweighted_prevalence,
    run_panel,
)
from .tables import ProbabilityTable, approximate_ranking, expert_graph, situational_graph, squared_distance

Y = ("Y1", "Y2", "Y3")


def cycle_graph(weight, labels=("A", "B", "C")) -> ExpertGraph:
    a, b, c = labels
    return ExpertGraph.from_edges(labels, {(a, b): weight, (b, c): weight, (c, a): weight})


def three_state_table() -> ProbabilityTable:
    return ProbabilityTable.build(
        Y, [[".90", ".09", ".01"], [".01", ".90", ".09"], [".09", ".01", ".90"]]
    )


def five_three_two_table() -> ProbabilityTable:
    return ProbabilityTable.build(Y, [[".5", ".3", ".2"]])


def _entry(name: str, value) -> dict:
    if isinstance(value, Fraction):
        return {"name": name, "exact": fmt(value), "approx": f"{float(value):.4f}"}
    return {"name": name, "value": value}


def _panel_entries(panel) -> list[dict]:
    out = []
    for pc in panel.conclusions:
        a, b = pc.pair
        out.append(_entry(f"{a} vs {b}: value for {a}", pc.value))
        out.append(_entry(f"{a} vs {b}: preferred", pc.preferred or "tie"))
    out.append(_entry("cycle", str(panel.cycle) if panel.cycle else "none"))
    return out


def reproduction_report() -> dict[str, list[dict]]:
    report: dict[str, list[dict]] = {}

    t1 = covariate_shift_table()
    sec = [
        _entry("Cancer vs Virus, uniform covariate target", reweighted_prevalence(t1, ("Cancer", "Virus"), "uniform", "Cancer")),
        _entry("Cancer vs Virus, observed covariate weights", reweighted_prevalence(t1, ("Cancer", "Virus"), "observed", "Cancer")),
    ]
    sec += [dict(e, name="uniform panel: " + e["name"]) for e in _panel_entries(run_panel(t1, method="reweight-uniform"))]
    sec += [dict(e, name="observed panel: " + e["name"]) for e in _panel_entries(run_panel(t1, method="reweight-observed"))]
    report["covariate shift"] = sec

    t2 = causal_table()
    cv = ("Cancer", "Virus")
    sec = [
        _entry("Pr(Cancer | do(t1)), Cancer vs Virus", backdoor_do(t2, cv, "t1", "Cancer")),
        _entry("Pr(Cancer | do(t0)), Cancer vs Virus", backdoor_do(t2, cv, "t0", "Cancer")),
        _entry("ATE on Cancer, Cancer vs Virus", ate(t2, cv, "t1", "t0", "Cancer")),
        _entry("IPW ATE on Cancer, Cancer vs Virus", ipw_ate(t2, cv, "t1", "t0", "Cancer")),
    ]
    sec += [dict(e, name="backdoor panel: " + e["name"]) for e in _panel_entries(run_panel(t2, method="backdoor"))]
    sec += [dict(e, name="ipw panel: " + e["name"]) for e in _panel_entries(run_panel(t2, method="ipw"))]
    report["causal adjustment"] = sec

    t3 = three_state_table()
    g3 = expert_graph(t3)
    sec = [_entry(f"u1 opinion {a}->{b}", w) for a, b, w in _forward(situational_graph(t3, "u1"))]
    sec += [_entry(f"aggregate {a}->{b}", w) for a, b, w in _forward(g3)]
    sec.append(_entry("aggregate rounded to 2 decimals", f"{float(g3.weight('Y1', 'Y2')):.2f}"))
    sec.append(_entry("majority cycle", str(find_preference_cycle(g3))))
    scan = curl_scan(g3, 3)
    sec.append(_entry(f"curl sum {scan[0].cycle}", scan[0].sum))
    sec.append(_entry("curl satisfied", scan[0].satisfied))
    report["three-state expert graph"] = sec

    t5 = five_three_two_table()
    sec = [_entry(f"opinion {a}->{b}", w) for a, b, w in _forward(situational_graph(t5, "u1"))]
    for branch in prefix_step(t5, "u1"):
        rem = ", ".join(f"{lab}={fmt(p)}" for lab, p in branch.remainder)
        sec.append(_entry(f"first choice {branch.first_choice} weight", branch.weight))
        sec.append(_entry(f"first choice {branch.first_choice} remainder", rem))
    dist = decompose_state(t5, "u1")
    for r, w in dist.weights.items():
        sec.append(_entry("ranking " + ">".join(r), w))
    sec.append(_entry("ranking weights total", sum(dist.weights.values(), Fraction(0))))
    back = synthesize_log(dist)
    sec += [_entry(f"recomposed {a}->{b}", w) for a, b, w in _forward(back)]
    literal = [complement_product_weight(Y, t5.p[0], r) for r in permutations(Y)]
    sec.append(_entry("complement-product weight Y1>Y2>Y3", literal[0]))
    sec.append(_entry("complement-product weights total", sum(literal, Fraction(0))))
    report["first-choice decomposition"] = sec

    cyclic = RankingDistribution(Y, {("Y1", "Y2", "Y3"): Fraction(1, 3), ("Y2", "Y3", "Y1"): Fraction(1, 3), ("Y3", "Y1", "Y2"): Fraction(1, 3)})
    sec = [_entry(f"three cyclic rankings {a}->{b}", w) for a, b, w in _forward(synthesize_log(cyclic))]
    approx_table = approximate_ranking(("A", "B", "C"), Fraction(3, 10))
    sec.append(_entry("approximation of A>B>C, step 1/10: opinion A->B", situational_graph(approx_table, "u_r").weight("A", "B")))
    eps = Fraction(1, 100)
    table = approximate_ranking(("A", "B", "C"), eps)
    sec.append(_entry("approximation of A>B>C, epsilon 1/100: squared distance", squared_distance(table, "u_r", RankingGraph(("A", "B", "C")))))
    report["ranking mixtures"] = sec

    sec = []
    for w in (Fraction(2, 3), Fraction(3, 4)):
        v = membership(cycle_graph(w))
        sec.append(_entry(f"3-cycle at {fmt(w)}: feasible", v.feasible))
        sec.append(_entry(f"3-cycle at {fmt(w)}: strictly interior", v.strictly_interior))
        sec.append(_entry(f"3-cycle at {fmt(w)}: curl sum", curl_scan(cycle_graph(w), 3)[0].sum))
    partial = ExpertGraph.from_edges(("A", "B", "C"), {("A", "B"): Fraction(2, 3), ("B", "C"): Fraction(2, 3)})
    bounds = bound_missing_edge(PolytopeQuery(partial, ("A", "C"))).bounds
    sec.append(_entry("A->B = B->C = 2/3: bound on A->C", f"[{fmt(bounds[0])}, {fmt(bounds[1])}]"))
    v3 = membership(g3)
    sec.append(_entry("three-state expert graph: strictly interior", v3.strictly_interior))
    report["linear ordering polytope"] = sec

    sec = []
    for name, coeffs in (("all ones", (1, 1, 1, 1, 1, 1)), ("1,1,1,1.1,1.2,1.3", (1, 1, 1, "1.1", "1.2", "1.3"))):
        g = greek_table(*coeffs)
        for cond, res in faithfulness_check(g).items():
            sec.append(_entry(f"{name}: {cond}", res.verdict))
        for pair in (("Cancer", "Virus"), ("Virus", "Allergies"), ("Cancer", "Allergies")):
            res = faithfulness_check(g, pair)["T-Y|X"]
            sec.append(_entry(f"{name}: T-Y|X restricted to {pair[0]}/{pair[1]}", res.verdict))
    report["faithfulness"] = sec
    return report


def _forward(g):
    """Edges listed as a cycle Y1->Y2, Y2->Y3, Y3->Y1 when that is the graph."""
    labels = g.labels
    if len(labels) == 3:
        a, b, c = labels
        return [(a, b, g.weight(a, b)), (b, c, g.weight(b, c)), (c, a, g.weight(c, a))]
    return [(a, b, g.weight(a, b)) for a, b in g.edges]


def render_text(report: dict[str, list[dict]]) -> str:
    lines = []
    for section, entries in report.items():
        lines.append(f"== {section}")
        for e in entries:
            if "exact" in e:
                lines.append(f"  {e['name']}: {e['exact']} ({e['approx']})")
            else:
                lines.append(f"  {e['name']}: {e['value']}")
    return "\n".join(lines) + "\n"
