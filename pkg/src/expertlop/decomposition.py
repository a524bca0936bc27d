"""Expert graphs to ranking distributions and back.

``decompose_state`` splits a single state by first choice (each label ``i``
leads with probability ``p(i)``), renormalizes the remaining labels, and
recurses. The resulting ranking weights reproduce every pairwise opinion of
that state exactly; mixing over states by ``d`` does the same for the
aggregate expert graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from math import factorial
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import InputError, SizeLimitError
from .graph import LabelSet, LinearOrderingGraph, as_labelset
from .kernels import pair_incidence
from .rational import as_fraction, exact_incidence_sums
from .tables import ProbabilityTable

MAX_LABELS = 8


def check_size(n: int) -> None:
    if n > MAX_LABELS:
        raise SizeLimitError(f"{n} labels means {n}! rankings; the limit is {MAX_LABELS} labels")


def index_permutations(n: int) -> np.ndarray:
    """All permutations of ``range(n)`` in lexicographic order, shape (n!, n)."""
    check_size(n)
    return np.array(list(permutations(range(n))), dtype=np.int64).reshape(-1, n)


@dataclass(frozen=True)
class RankingDistribution:
    """Nonnegative weights over total orders of ``labels``, summing to one.

    Rankings absent from ``weights`` have weight zero.
    """

    labels: LabelSet
    weights: Mapping[tuple[str, ...], Fraction]

    def __post_init__(self):
        labels = as_labelset(self.labels)
        check_size(len(labels))
        target = set(labels)
        clean = {}
        for ranking, w in self.weights.items():
            ranking = tuple(ranking)
            if len(ranking) != len(labels) or set(ranking) != target:
                raise InputError(f"{ranking} is not a permutation of {labels.labels}")
            if ranking in clean:
                raise InputError(f"ranking {ranking} listed twice")
            w = as_fraction(w)
            if w < 0:
                raise InputError(f"negative weight {w} on ranking {ranking}")
            clean[ranking] = w
        total = sum(clean.values(), Fraction(0))
        if total != 1:
            raise InputError(f"ranking weights sum to {total}, not 1")
        order = {lab: i for i, lab in enumerate(labels)}
        ordered = dict(sorted(clean.items(), key=lambda kv: [order[x] for x in kv[0]]))
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "weights", ordered)

    def __len__(self):
        return len(self.weights)

    def weight(self, ranking: Sequence[str]) -> Fraction:
        return self.weights.get(tuple(ranking), Fraction(0))

    def support(self) -> list[tuple[str, ...]]:
        return [r for r, w in self.weights.items() if w]

    def min_weight(self) -> Fraction:
        """Smallest weight over all n! rankings (zero if any ranking is missing)."""
        if len(self.weights) < factorial(len(self.labels)):
            return Fraction(0)
        return min(self.weights.values())


@dataclass(frozen=True)
class PrefixDecomposition:
    """One branch of a first-choice split.

    ``remainder`` is the renormalized distribution over the labels that are
    still unranked, as ``(label, probability)`` pairs.
    """

    first_choice: str
    weight: Fraction
    remainder: tuple[tuple[str, Fraction], ...]

    @property
    def remainder_labels(self) -> tuple[str, ...]:
        return tuple(lab for lab, _ in self.remainder)

    @property
    def remainder_probs(self) -> tuple[Fraction, ...]:
        return tuple(p for _, p in self.remainder)


def prefix_split(labels: Sequence[str], probs: Sequence[Fraction]) -> list[PrefixDecomposition]:
    """Split a strictly positive categorical distribution by its first choice.

    A single label is the base case: one branch of weight 1 with nothing left.
    """
    labels = tuple(labels)
    probs = tuple(as_fraction(p) for p in probs)
    if len(labels) != len(probs) or not labels:
        raise InputError("labels and probabilities must be non-empty and aligned")
    if any(p <= 0 for p in probs):
        raise InputError("prefix splitting needs strictly positive probabilities")
    if sum(probs) != 1:
        raise InputError(f"probabilities sum to {sum(probs)}, not 1")
    if len(labels) == 1:
        return [PrefixDecomposition(labels[0], Fraction(1), ())]
    out = []
    for i, (lab, p) in enumerate(zip(labels, probs)):
        rest = 1 - p
        remainder = tuple((labels[j], probs[j] / rest) for j in range(len(labels)) if j != i)
        out.append(PrefixDecomposition(lab, p, remainder))
    return out


def prefix_step(t: ProbabilityTable, u) -> list[PrefixDecomposition]:
    return prefix_split(t.labels.labels, t.row(u))


def _sequential_weights(labels: tuple[str, ...], probs: tuple[Fraction, ...]) -> dict[tuple[str, ...], Fraction]:
    out: dict[tuple[str, ...], Fraction] = {}

    def recurse(prefix: tuple[str, ...], mass: Fraction, labs, ps):
        for branch in prefix_split(labs, ps):
            w = mass * branch.weight
            ranking = prefix + (branch.first_choice,)
            if branch.remainder:
                recurse(ranking, w, branch.remainder_labels, branch.remainder_probs)
            else:
                out[ranking] = w

    recurse((), Fraction(1), labels, probs)
    return out


def decompose_state(t: ProbabilityTable, u) -> RankingDistribution:
    check_size(t.n)
    return RankingDistribution(t.labels, _sequential_weights(t.labels.labels, t.row(u)))


def decompose_graph(t: ProbabilityTable) -> RankingDistribution:
    """Mixture over states of the per-state decompositions, weighted by ``d``."""
    check_size(t.n)
    total: dict[tuple[str, ...], Fraction] = {}
    for ui, du in enumerate(t.d):
        if not du:
            continue
        for ranking, w in _sequential_weights(t.labels.labels, t.p[ui]).items():
            total[ranking] = total.get(ranking, Fraction(0)) + du * w
    return RankingDistribution(t.labels, total)


def synthesize_log(dist: RankingDistribution, edges: Iterable[tuple[str, str]] | None = None) -> LinearOrderingGraph:
    """Edge ``a -> b`` gets the total weight of rankings placing ``a`` before ``b``."""
    labels = dist.labels
    if edges is None:
        pairs = [(labels.index(a), labels.index(b)) for a, b in labels.all_pairs()]
    else:
        pairs = []
        for a, b in edges:
            i, j = labels.index(a), labels.index(b)
            if i == j:
                raise InputError(f"edge endpoints must differ, got {a!r} twice")
            pairs.append((min(i, j), max(i, j)))
        pairs = sorted(set(pairs))
    rankings = list(dist.weights)
    if not pairs:
        return LinearOrderingGraph(labels, {})
    perms = np.array([[labels.index(x) for x in r] for r in rankings], dtype=np.int64)
    inc = pair_incidence(perms, pairs)
    sums = exact_incidence_sums(inc, list(dist.weights.values()))
    return LinearOrderingGraph(labels, dict(zip(pairs, sums)))


def complement_product_weight(labels: Sequence[str], probs: Sequence, ranking: Sequence[str]) -> Fraction:
    """``prod_i p(r_i) / prod_{j<i} (1 - p(r_j))``: divides by complements one at a time.

    This is *not* the first-choice recursion (which divides by the remaining
    mass ``1 - sum_{j<i} p(r_j)``) and its weights do not sum to one. It is
    kept only so reports and tests can show the difference.
    """
    p = dict(zip(labels, (as_fraction(v) for v in probs)))
    w = Fraction(1)
    for i, lab in enumerate(ranking):
        denom = Fraction(1)
        for prev in ranking[:i]:
            denom *= 1 - p[prev]
        w *= p[lab] / denom
    return w
