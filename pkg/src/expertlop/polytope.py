"""Linear ordering polytope membership, interiority, and missing-edge bounds.

Every question is posed as an exact LP over the n! ranking weights: the
specified edges fix ``sum_r w(r) f_r(e)`` and the weights form a probability
vector. No facet description of the polytope is needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import lp
from .decomposition import RankingDistribution, check_size, index_permutations
from .errors import InputError
from .graph import Cycle, CurlResult, PairwiseGraph, curl_check
from .kernels import pair_incidence


@dataclass(frozen=True)
class PolytopeQuery:
    graph: PairwiseGraph
    target_edge: tuple[str, str] | None = None

    def __post_init__(self):
        if self.target_edge is not None:
            a, b = self.target_edge
            if self.graph.has_edge(a, b):
                raise InputError(f"target edge {a!r}-{b!r} already has a weight in the graph")
            object.__setattr__(self, "target_edge", (a, b))


@dataclass(frozen=True)
class PolytopeVerdict:
    feasible: bool
    strictly_interior: bool
    bounds: tuple[Fraction, Fraction] | None = None
    target_edge: tuple[str, str] | None = None
    # largest achievable minimum ranking weight; positive iff strictly interior
    interior_margin: Fraction | None = None
    witness: RankingDistribution | None = None


class _System:
    """Equality constraints ``inc.T @ w == f``, ``sum(w) == 1`` for a graph."""

    def __init__(self, g: PairwiseGraph):
        check_size(g.n)
        self.graph = g
        self.perms = index_permutations(g.n)
        self.pairs = list(g.weights)
        self.N = len(self.perms)
        if self.pairs:
            inc = pair_incidence(self.perms, self.pairs)
            self.A = np.vstack([inc.T.astype(np.int64), np.ones((1, self.N), dtype=np.int64)])
        else:
            self.A = np.ones((1, self.N), dtype=np.int64)
        self.b = list(g.weights.values()) + [Fraction(1)]

    def target_row(self, a: str, b: str) -> np.ndarray:
        labels = self.graph.labels
        i, j = labels.index(a), labels.index(b)
        return pair_incidence(self.perms, [(i, j)])[:, 0].astype(np.int64)

    def distribution(self, w) -> RankingDistribution:
        labels = self.graph.labels
        weights = {tuple(labels[k] for k in perm): wi for perm, wi in zip(self.perms, w) if wi}
        return RankingDistribution(labels, weights)


def _interior_lp(system: _System, method: str) -> lp.LPResult:
    # w = v + s with v >= 0: maximizing s maximizes the smallest ranking weight
    A = system.A
    s_col = A.sum(axis=1, keepdims=True)
    A2 = np.hstack([A, s_col])
    c = [0] * system.N + [1]
    return lp.solve(c, A2, system.b, maximize=True, method=method)


def membership(g: PairwiseGraph, *, method: str = "auto") -> PolytopeVerdict:
    """Is ``g`` a convex combination of ranking graphs, and strictly inside?"""
    system = _System(g)
    res = _interior_lp(system, method)
    if res.status == lp.INFEASIBLE:
        return PolytopeVerdict(False, False)
    if res.status != lp.OPTIMAL:  # pragma: no cover - bounded by construction
        raise lp.SolverError(f"unexpected LP status {res.status}")
    s = res.objective
    w = [v + s for v in res.x[: system.N]]
    return PolytopeVerdict(
        feasible=True,
        strictly_interior=s > 0,
        interior_margin=s,
        witness=system.distribution(w),
    )


def bound_missing_edge(q: PolytopeQuery, *, method: str = "auto") -> PolytopeVerdict:
    """Exact range of the target edge's weight over all consistent ranking mixtures."""
    if q.target_edge is None:
        raise InputError("bound_missing_edge needs a target edge")
    a, b = q.target_edge
    system = _System(q.graph)
    base = membership(q.graph, method=method)
    if not base.feasible:
        return PolytopeVerdict(False, False, target_edge=q.target_edge)
    row = system.target_row(a, b)
    lo = lp.solve(row, system.A, system.b, method=method)
    hi = lp.solve(row, system.A, system.b, maximize=True, method=method)
    if not (lo.optimal and hi.optimal):  # pragma: no cover
        raise lp.SolverError("bound LP did not reach an optimum on a feasible system")
    return PolytopeVerdict(
        feasible=True,
        strictly_interior=base.strictly_interior,
        bounds=(lo.objective, hi.objective),
        target_edge=q.target_edge,
        interior_margin=base.interior_margin,
        witness=base.witness,
    )


def _undirected_cycles(g: PairwiseGraph, max_len: int):
    n = g.n
    adj = {i: set() for i in range(n)}
    for i, j in g.weights:
        adj[i].add(j)
        adj[j].add(i)
    for s in range(n):
        stack = [(s, [s])]
        while stack:
            v, path = stack.pop()
            for w in sorted(adj[v]):
                if w == s and len(path) >= 3 and path[1] < path[-1]:
                    yield tuple(path)
                elif w > s and w not in path and len(path) < max_len:
                    stack.append((w, path + [w]))


def curl_scan(g: PairwiseGraph, max_len: int = 4) -> list[CurlResult]:
    """Curl check for every cycle of length 3..``max_len`` over present edges.

    Each undirected cycle is reported once, in the orientation with the larger
    weight sum; the opposite orientation sums to ``len - sum <= len / 2`` and
    always satisfies the condition. Results are sorted most-violated first.
    """
    if max_len < 3:
        raise InputError(f"max_len must be at least 3, got {max_len}")
    labels = g.labels
    out = []
    for idx in _undirected_cycles(g, max_len):
        fwd = curl_check(g, Cycle(tuple(labels[i] for i in idx)))
        rev_idx = (idx[0],) + tuple(reversed(idx[1:]))
        rev = curl_check(g, Cycle(tuple(labels[i] for i in rev_idx)))
        out.append(rev if rev.sum > fwd.sum else fwd)

    def key(res: CurlResult):
        return (-res.margin, len(res.cycle), [labels.index(v) for v in res.cycle.vertices])

    return sorted(out, key=key)
