"""Weighted pairwise digraphs over a fixed label alphabet.

One number is stored per unordered pair, in canonical orientation (lower label
index first); the reverse orientation is always derived as ``1 - w``, so the
two directions cannot disagree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import (
    IdenticalLabelsError,
    IncompleteGraphError,
    InputError,
    MissingEdgeError,
    UnknownLabelError,
)
from .rational import as_fraction

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class LabelSet:
    labels: tuple[str, ...]
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        labels = tuple(str(lab) for lab in self.labels)
        if len(labels) < 2:
            raise InputError(f"need at least two labels, got {len(labels)}")
        if len(set(labels)) != len(labels):
            raise InputError(f"labels must be distinct: {labels}")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "_index", {lab: i for i, lab in enumerate(labels)})

    def __len__(self):
        return len(self.labels)

    def __iter__(self) -> Iterator[str]:
        return iter(self.labels)

    def __contains__(self, label) -> bool:
        return label in self._index

    def __getitem__(self, i: int) -> str:
        return self.labels[i]

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise UnknownLabelError(f"unknown label {label!r}") from None

    def all_pairs(self) -> list[tuple[str, str]]:
        return [(self.labels[i], self.labels[j]) for i, j in combinations(range(len(self)), 2)]


def as_labelset(labels) -> LabelSet:
    return labels if isinstance(labels, LabelSet) else LabelSet(tuple(labels))


def _canonical(labels: LabelSet, a: str, b: str) -> tuple[int, int, bool]:
    """Index pair (lo, hi) and whether ``a -> b`` is the stored orientation."""
    i, j = labels.index(a), labels.index(b)
    if i == j:
        raise IdenticalLabelsError(f"edge endpoints must differ, got {a!r} twice")
    return (i, j, True) if i < j else (j, i, False)


@dataclass(frozen=True)
class PairwiseGraph:
    """Pairwise preference weights in the closed interval [0, 1].

    ``weights`` maps canonical index pairs ``(i, j)`` with ``i < j`` to the
    weight of ``labels[i] -> labels[j]``.
    """

    labels: LabelSet
    weights: Mapping[tuple[int, int], Fraction]

    _open_interval = False

    def __post_init__(self):
        labels = as_labelset(self.labels)
        object.__setattr__(self, "labels", labels)
        n = len(labels)
        clean = {}
        for key, w in self.weights.items():
            i, j = key
            if not (0 <= i < n and 0 <= j < n) or i >= j:
                raise InputError(f"edge key {key} is not a canonical pair for {n} labels")
            w = as_fraction(w)
            if self._open_interval:
                if not 0 < w < 1:
                    raise InputError(
                        f"weight of {labels[i]}->{labels[j]} must lie strictly inside (0, 1), got {w}"
                    )
            elif not 0 <= w <= 1:
                raise InputError(f"weight of {labels[i]}->{labels[j]} must lie in [0, 1], got {w}")
            clean[(i, j)] = w
        object.__setattr__(self, "weights", dict(sorted(clean.items())))

    @classmethod
    def from_edges(cls, labels, edges: Mapping[tuple[str, str], object] | Iterable):
        """Build from ``{(from, to): weight}`` in either orientation."""
        labels = as_labelset(labels)
        items = edges.items() if isinstance(edges, Mapping) else edges
        weights: dict[tuple[int, int], Fraction] = {}
        for (a, b), w in items:
            i, j, forward = _canonical(labels, a, b)
            w = as_fraction(w)
            value = w if forward else 1 - w
            if (i, j) in weights and weights[(i, j)] != value:
                raise InputError(f"conflicting weights given for pair {a!r}/{b!r}")
            weights[(i, j)] = value
        return cls(labels, weights)

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def edges(self) -> list[tuple[str, str]]:
        return [(self.labels[i], self.labels[j]) for i, j in self.weights]

    def has_edge(self, a: str, b: str) -> bool:
        i, j, _ = _canonical(self.labels, a, b)
        return (i, j) in self.weights

    def is_complete(self) -> bool:
        n = self.n
        return len(self.weights) == n * (n - 1) // 2

    def weight(self, a: str, b: str) -> Fraction:
        return edge_weight(self, a, b)

    def directed_items(self) -> Iterator[tuple[str, str, Fraction]]:
        """Every present edge in both orientations."""
        for (i, j), w in self.weights.items():
            yield self.labels[i], self.labels[j], w
            yield self.labels[j], self.labels[i], 1 - w

    def boundary_edges(self) -> list[tuple[str, str]]:
        return [(self.labels[i], self.labels[j]) for (i, j), w in self.weights.items() if w in (0, 1)]

    @property
    def on_boundary(self) -> bool:
        return any(w in (0, 1) for w in self.weights.values())

    def restricted_to(self, pairs: Iterable[tuple[str, str]]) -> "PairwiseGraph":
        keep = {}
        for a, b in pairs:
            i, j, _ = _canonical(self.labels, a, b)
            if (i, j) not in self.weights:
                raise MissingEdgeError(f"no edge between {a!r} and {b!r}")
            keep[(i, j)] = self.weights[(i, j)]
        return type(self)(self.labels, keep)

    def same_weights(self, other: "PairwiseGraph") -> bool:
        return self.labels == other.labels and self.weights == other.weights


class ExpertGraph(PairwiseGraph):
    """Aggregate expert opinions; every weight strictly inside (0, 1)."""

    _open_interval = True


class LinearOrderingGraph(PairwiseGraph):
    """Edge weights induced by a distribution over rankings.

    Weights may sit on the boundary {0, 1}; use :meth:`to_expert_graph` to
    obtain an :class:`ExpertGraph` when they do not.
    """

    def to_expert_graph(self) -> ExpertGraph:
        if self.on_boundary:
            raise InputError(f"boundary weights on edges {self.boundary_edges()}; not an expert graph")
        return ExpertGraph(self.labels, self.weights)


@dataclass(frozen=True)
class RankingGraph:
    """Total order of the labels; ``ranking[0]`` is the first choice."""

    ranking: tuple[str, ...]

    def __post_init__(self):
        ranking = tuple(str(x) for x in self.ranking)
        if len(set(ranking)) != len(ranking):
            raise InputError(f"ranking repeats a label: {ranking}")
        if len(ranking) < 1:
            raise InputError("empty ranking")
        object.__setattr__(self, "ranking", ranking)

    def position(self, label: str) -> int:
        try:
            return self.ranking.index(label)
        except ValueError:
            raise UnknownLabelError(f"label {label!r} not in ranking {self.ranking}") from None

    def as_graph(self, labels: Sequence[str] | LabelSet | None = None) -> LinearOrderingGraph:
        """The complete 0/1 graph of this ranking."""
        labels = as_labelset(labels if labels is not None else self.ranking)
        if set(labels) != set(self.ranking):
            raise InputError("ranking and label set differ")
        weights = {
            (i, j): Fraction(ranking_edge(self, labels[i], labels[j]))
            for i, j in combinations(range(len(labels)), 2)
        }
        return LinearOrderingGraph(labels, weights)


@dataclass(frozen=True)
class Cycle:
    """Directed cycle; the edge from ``vertices[-1]`` back to ``vertices[0]`` is implied."""

    vertices: tuple[str, ...]

    def __post_init__(self):
        vs = tuple(self.vertices)
        if len(vs) < 3:
            raise InputError(f"a cycle needs at least 3 vertices, got {vs}")
        if len(set(vs)) != len(vs):
            raise InputError(f"cycle repeats a vertex: {vs}")
        object.__setattr__(self, "vertices", vs)

    def __len__(self):
        return len(self.vertices)

    def arcs(self) -> list[tuple[str, str]]:
        vs = self.vertices
        return [(vs[k], vs[(k + 1) % len(vs)]) for k in range(len(vs))]

    def __str__(self):
        return "->".join(self.vertices + (self.vertices[0],))


@dataclass(frozen=True)
class CurlResult:
    cycle: Cycle
    sum: Fraction
    satisfied: bool

    @property
    def margin(self) -> Fraction:
        """``sum - (len - 1)``; positive means the condition is violated."""
        return self.sum - (len(self.cycle) - 1)


def edge_weight(g: PairwiseGraph, a: str, b: str) -> Fraction:
    """Weight of ``a -> b``; the complement of the stored value when reversed."""
    i, j, forward = _canonical(g.labels, a, b)
    try:
        w = g.weights[(i, j)]
    except KeyError:
        raise MissingEdgeError(f"no edge between {a!r} and {b!r}") from None
    return w if forward else 1 - w


def ranking_edge(r: RankingGraph, a: str, b: str) -> int:
    pa, pb = r.position(a), r.position(b)
    if pa == pb:
        raise IdenticalLabelsError(f"edge endpoints must differ, got {a!r} twice")
    return 1 if pa < pb else 0


def majority_successors(g: PairwiseGraph) -> dict[int, list[int]]:
    """Strict-majority tournament: ``i -> j`` iff the weight of ``i -> j`` exceeds 1/2."""
    succ: dict[int, list[int]] = {i: [] for i in range(g.n)}
    for (i, j), w in g.weights.items():
        if w > HALF:
            succ[i].append(j)
        elif w < HALF:
            succ[j].append(i)
    for v in succ.values():
        v.sort()
    return succ


def _reaches(succ: dict[int, list[int]], src: int, dst: int, blocked: set[int]) -> bool:
    stack, seen = [src], {src}
    while stack:
        v = stack.pop()
        for w in succ[v]:
            if w == dst:
                return True
            if w not in seen and w not in blocked:
                seen.add(w)
                stack.append(w)
    return False


def lexicographic_min_cycle(succ: dict[int, list[int]]) -> list[int] | None:
    """Lexicographically smallest directed cycle (as index sequence), if any.

    The smallest sequence starts at the smallest vertex lying on any cycle;
    from there each step greedily takes the smallest successor that can still
    get back to the start, and closes the cycle as soon as possible.
    """
    for s in sorted(succ):
        if not _reaches(succ, s, s, set()):
            continue
        path = [s]
        used = {s}
        while True:
            cur = path[-1]
            if len(path) >= 2 and s in succ[cur]:
                return path
            for v in succ[cur]:
                if v in used or v == s:
                    continue
                if _reaches(succ, v, s, used):
                    path.append(v)
                    used.add(v)
                    break
            else:  # pragma: no cover - reachability guarantees progress
                raise AssertionError("cycle search lost its way back")
    return None


def majority_cycle(g: PairwiseGraph) -> Cycle | None:
    """Like :func:`find_preference_cycle` but over whatever edges are present."""
    found = lexicographic_min_cycle(majority_successors(g))
    if found is None:
        return None
    return Cycle(tuple(g.labels[i] for i in found))


def find_preference_cycle(g: PairwiseGraph) -> Cycle | None:
    """Smallest directed cycle of the strict-majority tournament, or ``None``.

    Edges with weight exactly 1/2 are ties and belong to neither orientation.
    """
    if not g.is_complete():
        raise IncompleteGraphError(
            f"preference cycles are searched on complete graphs; {len(g.weights)} of "
            f"{g.n * (g.n - 1) // 2} edges present"
        )
    return majority_cycle(g)


def curl_check(g: PairwiseGraph, c: Cycle) -> CurlResult:
    """Sum the forward weights around ``c``; satisfied iff the sum is at most ``len(c) - 1``."""
    total = sum((edge_weight(g, a, b) for a, b in c.arcs()), Fraction(0))
    return CurlResult(c, total, total <= len(c) - 1)
