"""Command line entry point.

Exit codes: 0 success, 1 negative verdict (infeasible graph, violated curl
condition), 2 bad usage or bad input. Errors are also written to stderr as one
JSON line ``{"error": <category>, "message": ...}``.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from . import reproduction
from .decomposition import RankingDistribution, decompose_graph, decompose_state, synthesize_log
from .documents import Document, load_document, parse_document, render_document
from .errors import ExpertLOPError, InputError
from .graph import PairwiseGraph, majority_cycle
from .polytope import PolytopeQuery, bound_missing_edge, curl_scan, membership
from .rational import fmt, fmt_both
from .scenarios import METHODS, CountTable, run_panel
from .tables import ProbabilityTable, expert_graph, situational_graph

OK, VERDICT_FAILED, USAGE = 0, 1, 2


@dataclass
class CommandResult:
    code: int
    report: str
    error: str | None = None


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _pair(text: str) -> tuple[str, str]:
    parts = text.split(":")
    if len(parts) != 2 or not all(parts):
        raise InputError(f"expected an edge written A:B, got {text!r}")
    return parts[0], parts[1]


def _edge_list(text: str | None):
    if text is None:
        return None
    return [_pair(item.strip()) for item in text.split(",") if item.strip()]


def _read(path: str) -> Document:
    if path == "-":
        return parse_document(sys.stdin.buffer.read())
    try:
        return load_document(path)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _expect(doc: Document, *types):
    if not isinstance(doc.payload, types):
        names = " or ".join(t.__name__ for t in types)
        raise InputError(f"expected a document holding a {names}, got kind {doc.kind!r}")
    return doc.payload


def _num_json(value):
    return {"exact": fmt(value), "approx": round(float(value), 4)}


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


# -- graph text helpers ---------------------------------------------------------


def _graph_lines(g: PairwiseGraph) -> list[str]:
    return [f"  {a} -> {b}: {fmt_both(g.weight(a, b))}" for a, b in g.edges]


def _graph_out(g: PairwiseGraph, form: str, title: str) -> str:
    if form == "json":
        return render_document(g)
    return "\n".join([title] + _graph_lines(g)) + "\n"


# -- subcommands ----------------------------------------------------------------


def _cmd_build(args) -> CommandResult:
    t = _expect(_read(args.input), ProbabilityTable)
    edges = _edge_list(args.edges)
    if args.state is not None:
        g = situational_graph(t, args.state, edges)
        title = f"situational graph for state {args.state}"
    else:
        g = expert_graph(t, edges)
        title = "expert graph"
    return CommandResult(OK, _graph_out(g, args.format, title))


def _cmd_decompose(args) -> CommandResult:
    t = _expect(_read(args.input), ProbabilityTable)
    dist = decompose_state(t, args.state) if args.state is not None else decompose_graph(t)
    if args.format == "json":
        return CommandResult(OK, render_document(dist))
    lines = [f"{len(dist)} rankings"]
    lines += [f"  {' > '.join(r)}: {fmt_both(w)}" for r, w in dist.weights.items()]
    lines.append(f"  total: {fmt_both(sum(dist.weights.values()))}")
    return CommandResult(OK, "\n".join(lines) + "\n")


def _cmd_recompose(args) -> CommandResult:
    dist = _expect(_read(args.input), RankingDistribution)
    g = synthesize_log(dist, _edge_list(args.edges))
    return CommandResult(OK, _graph_out(g, args.format, "linear ordering graph"))


def _cmd_check(args) -> CommandResult:
    doc = _read(args.input)
    g = doc.payload.graph if isinstance(doc.payload, PolytopeQuery) else _expect(doc, PairwiseGraph)
    edges = _edge_list(args.edges)
    if edges is not None:
        g = g.restricted_to(edges)
    verdict = membership(g, method=args.solver)
    scan = curl_scan(g, args.max_cycle_len)
    violated = [c for c in scan if not c.satisfied]
    cycle = majority_cycle(g)
    code = OK if verdict.feasible and not violated else VERDICT_FAILED
    status = "feasible" if verdict.feasible else "infeasible"
    if args.format == "json":
        out = {
            "membership": status,
            "strictly_interior": verdict.strictly_interior,
            "interior_margin": None if verdict.interior_margin is None else _num_json(verdict.interior_margin),
            "majority_cycle": None if cycle is None else list(cycle.vertices),
            "curl": [
                {"cycle": list(c.cycle.vertices), "sum": _num_json(c.sum), "bound": len(c.cycle) - 1, "satisfied": c.satisfied}
                for c in scan
            ],
            "curl_violations": len(violated),
        }
        return CommandResult(code, _dump(out))
    lines = [f"membership: {status}"]
    if verdict.feasible:
        lines.append(f"strictly interior: {'yes' if verdict.strictly_interior else 'no (on the boundary)'}")
    lines.append(f"majority cycle: {cycle if cycle is not None else 'none'}")
    lines.append(f"curl scan (cycles up to length {args.max_cycle_len}): {len(scan)} cycles, {len(violated)} violated")
    for c in scan:
        mark = "ok" if c.satisfied else "VIOLATED"
        lines.append(f"  {c.cycle}: sum {fmt_both(c.sum)} <= {len(c.cycle) - 1}? {mark}")
    return CommandResult(code, "\n".join(lines) + "\n")


def _cmd_bound(args) -> CommandResult:
    doc = _read(args.input)
    if isinstance(doc.payload, PolytopeQuery):
        q = doc.payload
        if args.target is not None:
            q = PolytopeQuery(q.graph, _pair(args.target))
    else:
        g = _expect(doc, PairwiseGraph)
        if args.target is None:
            raise InputError("a plain graph needs --target A:B")
        q = PolytopeQuery(g, _pair(args.target))
    if q.target_edge is None:
        raise InputError("the query has no target edge; pass --target A:B")
    v = bound_missing_edge(q, method=args.solver)
    a, b = q.target_edge
    code = OK if v.feasible else VERDICT_FAILED
    if args.format == "json":
        out = {"target": [a, b], "feasible": v.feasible}
        if v.bounds is not None:
            out["lower"] = _num_json(v.bounds[0])
            out["upper"] = _num_json(v.bounds[1])
        return CommandResult(code, _dump(out))
    if not v.feasible:
        return CommandResult(code, f"{a} -> {b}: infeasible (the given edges admit no ranking mixture)\n")
    lo, hi = v.bounds
    return CommandResult(code, f"{a} -> {b}: [{fmt(lo)}, {fmt(hi)}] ({float(lo):.4f} to {float(hi):.4f})\n")


def _cmd_scenario(args) -> CommandResult:
    c = _expect(_read(args.input), CountTable)
    panel = run_panel(c, _edge_list(args.edges), args.method, args.t1, args.t0)
    if args.format == "json":
        out = {
            "method": panel.method,
            "conclusions": [
                {"pair": list(pc.pair), "value": _num_json(pc.value), "preferred": pc.preferred, "margin": _num_json(pc.margin)}
                for pc in panel.conclusions
            ],
            "cycle": None if panel.cycle is None else list(panel.cycle.vertices),
        }
        return CommandResult(OK, _dump(out))
    causal = panel.method in ("backdoor", "ipw")
    lines = [f"method: {panel.method}"]
    for pc in panel.conclusions:
        a, b = pc.pair
        what = f"effect on {a}" if causal else f"prevalence of {a}"
        pref = pc.preferred if pc.preferred is not None else "tie"
        lines.append(f"  {a} vs {b}: {what} {fmt_both(pc.value)}, preferred {pref}, margin {fmt_both(pc.margin)}")
    lines.append(f"cycle: {panel.cycle if panel.cycle is not None else 'none'}")
    return CommandResult(OK, "\n".join(lines) + "\n")


def _cmd_examples(args) -> CommandResult:
    report = reproduction.reproduction_report()
    if args.format == "json":
        return CommandResult(OK, _dump(report))
    return CommandResult(OK, reproduction.render_text(report))


# -- parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="expertlop", description="Expert graphs, ranking mixtures and the linear ordering polytope.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_, input_help=None):
        sp = sub.add_parser(name, help=help_)
        if input_help:
            sp.add_argument("input", help=input_help + " ('-' for stdin)")
        sp.add_argument("--format", choices=("text", "json"), default="text")
        sp.set_defaults(func=func)
        return sp

    sp = add("build", _cmd_build, "probability table -> expert graph", "probability_table document")
    sp.add_argument("--state", help="only this state's situational graph")
    sp.add_argument("--edges", help="comma separated A:B pairs (default: all pairs)")

    sp = add("decompose", _cmd_decompose, "probability table -> ranking distribution", "probability_table document")
    sp.add_argument("--state", help="decompose a single state instead of the mixture")

    sp = add("recompose", _cmd_recompose, "ranking distribution -> linear ordering graph", "ranking_distribution document")
    sp.add_argument("--edges", help="comma separated A:B pairs (default: all pairs)")

    sp = add("check", _cmd_check, "polytope membership and curl scan", "expert_graph or query document")
    sp.add_argument("--max-cycle-len", type=int, default=4)
    sp.add_argument("--edges", help="check only this sub-panel of edges")
    sp.add_argument("--solver", choices=("auto", "exact"), default="auto")

    sp = add("bound", _cmd_bound, "feasible interval for a missing edge", "query or expert_graph document")
    sp.add_argument("--target", help="missing edge A:B (required for a plain graph)")
    sp.add_argument("--solver", choices=("auto", "exact"), default="auto")

    sp = add("scenario", _cmd_scenario, "pairwise expert panel on a count table", "count_table document")
    sp.add_argument("--method", choices=METHODS, default="reweight-uniform")
    sp.add_argument("--t1", help="treated arm (causal methods)")
    sp.add_argument("--t0", help="control arm (causal methods)")
    sp.add_argument("--edges", help="comma separated label pairs A:B (default: all pairs)")

    add("paper", _cmd_examples, "recompute every worked example")
    return p


def _error_line(category: str, message: str) -> str:
    return json.dumps({"error": category, "message": message})


def run_command(argv) -> CommandResult:
    try:
        args = build_parser().parse_args(list(argv))
    except _UsageError as exc:
        return CommandResult(USAGE, "", _error_line("usage", str(exc)))
    except SystemExit as exc:  # --help
        return CommandResult(int(exc.code or 0), "")
    try:
        return args.func(args)
    except ExpertLOPError as exc:
        return CommandResult(USAGE, "", _error_line(exc.category, str(exc)))


def main(argv=None) -> int:
    result = run_command(sys.argv[1:] if argv is None else argv)
    if result.report:
        sys.stdout.write(result.report)
    if result.error:
        sys.stderr.write(result.error + "\n")
    return result.code


if __name__ == "__main__":
    sys.exit(main())
