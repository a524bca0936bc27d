"""Probability tables and the opinions they induce.

A table holds, for every hidden state ``u``, a strictly positive categorical
distribution over the labels, plus a distribution ``d`` over the states.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import IdenticalLabelsError, InvalidEpsilonError, InvalidTableError, UnknownStateError
from .graph import ExpertGraph, LabelSet, RankingGraph, as_labelset, ranking_edge
from .rational import as_fraction


@dataclass(frozen=True)
class ProbabilityTable:
    labels: LabelSet
    states: tuple[str, ...]
    p: tuple[tuple[Fraction, ...], ...]
    d: tuple[Fraction, ...]

    def __post_init__(self):
        labels = as_labelset(self.labels)
        states = tuple(str(s) for s in self.states)
        if not states:
            raise InvalidTableError("a probability table needs at least one state")
        if len(set(states)) != len(states):
            raise InvalidTableError(f"state identifiers must be distinct: {states}")
        if len(self.p) != len(states):
            raise InvalidTableError(f"{len(self.p)} rows for {len(states)} states")
        rows = []
        for u, row in zip(states, self.p):
            row = tuple(as_fraction(x) for x in row)
            if len(row) != len(labels):
                raise InvalidTableError(f"row {u!r} has {len(row)} entries, expected {len(labels)}")
            if any(x <= 0 for x in row):
                raise InvalidTableError(f"row {u!r} has a non-positive entry: every probability must be > 0")
            if sum(row) != 1:
                raise InvalidTableError(f"row {u!r} sums to {sum(row)}, not 1")
            rows.append(row)
        d = tuple(as_fraction(x) for x in self.d)
        if len(d) != len(states):
            raise InvalidTableError(f"state distribution has {len(d)} entries for {len(states)} states")
        if any(x < 0 for x in d):
            raise InvalidTableError("state distribution has a negative entry")
        if sum(d) != 1:
            raise InvalidTableError(f"state distribution sums to {sum(d)}, not 1")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "p", tuple(rows))
        object.__setattr__(self, "d", d)

    @classmethod
    def build(cls, labels, rows: Sequence[Sequence], d: Sequence | None = None, states: Sequence[str] | None = None):
        """Convenience constructor; ``d`` defaults to uniform, states to ``u1..uk``."""
        k = len(rows)
        if states is None:
            states = [f"u{i + 1}" for i in range(k)]
        if d is None:
            d = [Fraction(1, k)] * k
        return cls(as_labelset(labels), tuple(states), tuple(tuple(r) for r in rows), tuple(d))

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def k(self) -> int:
        return len(self.states)

    def state_index(self, u) -> int:
        if isinstance(u, int) and not isinstance(u, bool) and str(u) not in self.states:
            if 0 <= u < self.k:
                return u
        try:
            return self.states.index(str(u))
        except ValueError:
            raise UnknownStateError(f"unknown state {u!r}") from None

    def row(self, u) -> tuple[Fraction, ...]:
        return self.p[self.state_index(u)]


def _pair_list(t_labels: LabelSet, edges) -> list[tuple[str, str]]:
    if edges is None:
        return t_labels.all_pairs()
    return [(a, b) for a, b in edges]


def situational_opinion(t: ProbabilityTable, u, i: str, j: str) -> Fraction:
    """``p_u(i) / (p_u(i) + p_u(j))``: how often ``i`` beats ``j`` in state ``u``."""
    row = t.row(u)
    a, b = t.labels.index(i), t.labels.index(j)
    if a == b:
        raise IdenticalLabelsError(f"opinion needs two different labels, got {i!r} twice")
    return row[a] / (row[a] + row[b])


def situational_graph(t: ProbabilityTable, u, edges: Iterable[tuple[str, str]] | None = None) -> ExpertGraph:
    pairs = _pair_list(t.labels, edges)
    return ExpertGraph.from_edges(t.labels, {(a, b): situational_opinion(t, u, a, b) for a, b in pairs})


def expert_graph(t: ProbabilityTable, edges: Iterable[tuple[str, str]] | None = None) -> ExpertGraph:
    """Aggregate opinions: each edge weight is the ``d``-average of the situational ones."""
    pairs = _pair_list(t.labels, edges)
    weights = {}
    for a, b in pairs:
        weights[(a, b)] = sum(
            (du * situational_opinion(t, u, a, b) for u, du in enumerate(t.d) if du),
            Fraction(0),
        )
    return ExpertGraph.from_edges(t.labels, weights)


def approximate_ranking(r: RankingGraph | Sequence[str], epsilon) -> ProbabilityTable:
    """One-state table whose opinions are within squared distance ``epsilon`` of ranking ``r``.

    Uses geometric probabilities ``p(r_i) proportional to (epsilon / m) ** i``
    with ``m`` the number of label pairs; each opinion then errs by less than
    ``epsilon / m``.
    """
    if not isinstance(r, RankingGraph):
        r = RankingGraph(tuple(r))
    eps = as_fraction(epsilon)
    n = len(r.ranking)
    if n < 2:
        raise InvalidEpsilonError("need at least two labels to approximate a ranking")
    m = n * (n - 1) // 2
    if eps <= 0:
        raise InvalidEpsilonError(f"epsilon must be positive, got {eps}")
    step = eps / m
    if step >= 1:
        raise InvalidEpsilonError(f"epsilon must be below the number of pairs ({m}), got {eps}")
    alphas = [step ** (i + 1) for i in range(n)]
    z = sum(alphas)
    labels = LabelSet(r.ranking)
    return ProbabilityTable.build(labels, [[a / z for a in alphas]], d=[1], states=["u_r"])


def squared_distance(t: ProbabilityTable, u, r: RankingGraph) -> Fraction:
    """``sum_e (f_r(e) - f_u(e))**2`` over all label pairs."""
    total = Fraction(0)
    for a, b in t.labels.all_pairs():
        diff = ranking_edge(r, a, b) - situational_opinion(t, u, a, b)
        total += diff * diff
    return total
