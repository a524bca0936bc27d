"""JSON document format for every input/output object.

Layout::

    {"kind": "<kind>", "version": "1", "payload": {...}}

Numbers may be JSON numbers or strings (``"2/3"``, ``"0.61"``); both are read
as exact rationals. Rendering always writes strings so nothing is rounded.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from .decomposition import RankingDistribution
from .errors import DocumentError, InputError
from .graph import ExpertGraph, LinearOrderingGraph, PairwiseGraph
from .polytope import PolytopeQuery
from .rational import as_fraction, fmt
from .scenarios import CountTable
from .tables import ProbabilityTable

VERSION = "1"
KINDS = ("probability_table", "expert_graph", "ranking_distribution", "count_table", "query")


@dataclass(frozen=True)
class Document:
    kind: str
    version: str
    payload: Any


# -- parsing --------------------------------------------------------------------


def _num(value, field: str) -> Fraction:
    if isinstance(value, (list, dict)) or value is None:
        raise DocumentError(f"expected a number, got {type(value).__name__}", field=field)
    try:
        return as_fraction(value)
    except InputError as exc:
        raise DocumentError(str(exc), field=field) from None


def _get(obj: dict, key: str, field: str, kind=None, default=...):
    if not isinstance(obj, dict):
        raise DocumentError("expected an object", field=field)
    if key not in obj:
        if default is not ...:
            return default
        raise DocumentError(f"missing required field {key!r}", field=field)
    value = obj[key]
    if kind is not None and not isinstance(value, kind):
        raise DocumentError(f"expected {getattr(kind, '__name__', kind)}", field=f"{field}.{key}")
    return value


def _str_list(value, field: str) -> list[str]:
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise DocumentError("expected a list of strings", field=field)
    return value


def _wrap(build, field: str):
    try:
        return build()
    except DocumentError:
        raise
    except InputError as exc:
        raise DocumentError(str(exc), field=field) from None


def _parse_table(p: dict, f: str) -> ProbabilityTable:
    labels = _str_list(_get(p, "labels", f), f"{f}.labels")
    rows_raw = _get(p, "rows", f, list)
    rows = []
    for i, row in enumerate(rows_raw):
        where = f"{f}.rows[{i}]"
        if not isinstance(row, list):
            raise DocumentError("expected a list of probabilities", field=where)
        vals = [_num(v, f"{where}[{j}]") for j, v in enumerate(row)]
        if len(vals) != len(labels):
            raise DocumentError(f"{len(vals)} entries for {len(labels)} labels", field=where)
        if any(v <= 0 for v in vals):
            raise DocumentError("every probability must be strictly positive", field=where)
        if sum(vals) != 1:
            raise DocumentError(f"row sums to {fmt(sum(vals))}, not 1", field=where)
        rows.append(vals)
    states = _get(p, "states", f, default=None)
    if states is not None:
        states = _str_list(states, f"{f}.states")
    d = _get(p, "d", f, default=None)
    if d is not None:
        if not isinstance(d, list):
            raise DocumentError("expected a list", field=f"{f}.d")
        d = [_num(v, f"{f}.d[{i}]") for i, v in enumerate(d)]
        if sum(d) != 1:
            raise DocumentError(f"state distribution sums to {fmt(sum(d))}, not 1", field=f"{f}.d")
    return _wrap(lambda: ProbabilityTable.build(labels, rows, d=d, states=states), f)


def _parse_graph(p: dict, f: str) -> PairwiseGraph:
    labels = _str_list(_get(p, "labels", f), f"{f}.labels")
    edges_raw = _get(p, "edges", f, list)
    edges = []
    for i, e in enumerate(edges_raw):
        where = f"{f}.edges[{i}]"
        a = _get(e, "from", where, str)
        b = _get(e, "to", where, str)
        edges.append(((a, b), _num(_get(e, "weight", where), f"{where}.weight")))
    closed = _get(p, "allow_boundary", f, bool, default=False)
    cls = LinearOrderingGraph if closed else ExpertGraph
    return _wrap(lambda: cls.from_edges(labels, edges), f)


def _parse_distribution(p: dict, f: str) -> RankingDistribution:
    labels = _str_list(_get(p, "labels", f), f"{f}.labels")
    weights = {}
    for i, item in enumerate(_get(p, "rankings", f, list)):
        where = f"{f}.rankings[{i}]"
        ranking = tuple(_str_list(_get(item, "ranking", where), f"{where}.ranking"))
        if ranking in weights:
            raise DocumentError(f"ranking {list(ranking)} listed twice", field=where)
        weights[ranking] = _num(_get(item, "weight", where), f"{where}.weight")
    return _wrap(lambda: RankingDistribution(tuple(labels), weights), f)


def _parse_counts(p: dict, f: str) -> CountTable:
    labels = _str_list(_get(p, "labels", f), f"{f}.labels")
    treatments = _str_list(_get(p, "treatments", f, default=[]), f"{f}.treatments")
    covariates = _str_list(_get(p, "covariates", f), f"{f}.covariates")
    counts = {}
    for i, row in enumerate(_get(p, "rows", f, list)):
        where = f"{f}.rows[{i}]"
        t = _get(row, "t", where, default=None)
        x = _get(row, "x", where, str)
        vals = _get(row, "counts", where, list)
        if len(vals) != len(labels):
            raise DocumentError(f"{len(vals)} counts for {len(labels)} labels", field=where)
        for j, (y, v) in enumerate(zip(labels, vals)):
            counts[(t, x, y)] = _num(v, f"{where}.counts[{j}]")
    return _wrap(lambda: CountTable(tuple(treatments), tuple(covariates), tuple(labels), counts), f)


def _parse_query(p: dict, f: str) -> PolytopeQuery:
    graph = _parse_graph(_get(p, "graph", f, dict), f"{f}.graph")
    target = _get(p, "target", f, default=None)
    if target is not None:
        target = _str_list(target, f"{f}.target")
        if len(target) != 2:
            raise DocumentError("target must name exactly two labels", field=f"{f}.target")
        target = tuple(target)
    return _wrap(lambda: PolytopeQuery(graph, target), f)


_PARSERS = {
    "probability_table": _parse_table,
    "expert_graph": _parse_graph,
    "ranking_distribution": _parse_distribution,
    "count_table": _parse_counts,
    "query": _parse_query,
}


def parse_document(text: str | bytes) -> Document:
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise DocumentError(f"input is not UTF-8: {exc}") from None
    try:
        raw = json.loads(text, parse_float=Fraction)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"syntax error: {exc.msg}", line=exc.lineno) from None
    if not isinstance(raw, dict):
        raise DocumentError("top level must be an object")
    kind = _get(raw, "kind", "document", str)
    if kind not in KINDS:
        raise DocumentError(f"unknown kind {kind!r}; expected one of {KINDS}", field="kind")
    version = str(_get(raw, "version", "document"))
    if version != VERSION:
        raise DocumentError(f"unsupported version {version!r}; this reader understands {VERSION!r}", field="version")
    payload = _get(raw, "payload", "document", dict)
    return Document(kind, version, _PARSERS[kind](payload, "payload"))


def load_document(path) -> Document:
    with open(path, "rb") as fh:
        return parse_document(fh.read())


# -- rendering ------------------------------------------------------------------


def _graph_payload(g: PairwiseGraph) -> dict:
    payload = {
        "labels": list(g.labels),
        "edges": [{"from": a, "to": b, "weight": fmt(g.weight(a, b))} for a, b in g.edges],
    }
    if not isinstance(g, ExpertGraph):
        payload["allow_boundary"] = True
    return payload


def payload_to_json(obj) -> tuple[str, dict]:
    """``(kind, payload dict)`` for a domain object."""
    if isinstance(obj, ProbabilityTable):
        return "probability_table", {
            "labels": list(obj.labels),
            "states": list(obj.states),
            "rows": [[fmt(v) for v in row] for row in obj.p],
            "d": [fmt(v) for v in obj.d],
        }
    if isinstance(obj, PairwiseGraph):
        return "expert_graph", _graph_payload(obj)
    if isinstance(obj, RankingDistribution):
        return "ranking_distribution", {
            "labels": list(obj.labels),
            "rankings": [{"ranking": list(r), "weight": fmt(w)} for r, w in obj.weights.items()],
        }
    if isinstance(obj, CountTable):
        payload = {"labels": list(obj.labels)}
        if obj.treatments:
            payload["treatments"] = list(obj.treatments)
        payload["covariates"] = list(obj.covariates)
        rows = []
        for t in obj.treatment_keys:
            for x in obj.covariates:
                row = {"x": x, "counts": [fmt(obj.count(t, x, y)) for y in obj.labels]}
                if t is not None:
                    row = {"t": t, **row}
                rows.append(row)
        payload["rows"] = rows
        return "count_table", payload
    if isinstance(obj, PolytopeQuery):
        payload = {"graph": _graph_payload(obj.graph)}
        if obj.target_edge is not None:
            payload["target"] = list(obj.target_edge)
        return "query", payload
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def render_document(obj) -> str:
    """Serialize a :class:`Document` or a bare domain object."""
    payload_obj = obj.payload if isinstance(obj, Document) else obj
    kind, payload = payload_to_json(payload_obj)
    return json.dumps({"kind": kind, "version": VERSION, "payload": payload}, indent=2) + "\n"
