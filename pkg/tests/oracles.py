"""Reference implementations used only by the tests.

Nothing here imports the package; each oracle takes the obvious, slow route
so it can be trusted independently.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations, permutations, product

import sympy


# -- graphs ---------------------------------------------------------------------


def majority_acyclic(labels, w) -> bool:
    """Kahn topological sort on the strict-majority tournament.

    ``w(a, b)`` returns the weight of a -> b.
    """
    succ = {a: [b for b in labels if b != a and w(a, b) > Fraction(1, 2)] for a in labels}
    indeg = {a: 0 for a in labels}
    for a in labels:
        for b in succ[a]:
            indeg[b] += 1
    queue = [a for a in labels if indeg[a] == 0]
    seen = 0
    while queue:
        a = queue.pop()
        seen += 1
        for b in succ[a]:
            indeg[b] -= 1
            if indeg[b] == 0:
                queue.append(b)
    return seen == len(labels)


def directed_cycles(labels, max_len):
    """Every simple directed cycle, each rotation class once (smallest index first)."""
    idx = {lab: i for i, lab in enumerate(labels)}
    out = []
    for k in range(3, max_len + 1):
        for combo in combinations(labels, k):
            first, rest = combo[0], combo[1:]
            for order in permutations(rest):
                cyc = (first,) + order
                assert min(idx[x] for x in cyc) == idx[cyc[0]]
                out.append(cyc)
    return out


def cycle_sum(w, cyc) -> Fraction:
    return sum((w(cyc[i], cyc[(i + 1) % len(cyc)]) for i in range(len(cyc))), Fraction(0))


# -- decomposition --------------------------------------------------------------


def sequential_product(probs: dict, ranking) -> Fraction:
    """Weight of ``ranking`` when labels are drawn one by one without replacement."""
    used = Fraction(0)
    weight = Fraction(1)
    for lab in ranking:
        weight *= probs[lab] / (1 - used)
        used += probs[lab]
    return weight


def pairwise_from_rankings(weights: dict, a, b) -> Fraction:
    return sum((w for r, w in weights.items() if r.index(a) < r.index(b)), Fraction(0))


# -- LP by vertex enumeration ---------------------------------------------------


def _solve_square(M, rhs):
    mat = sympy.Matrix(M)
    if mat.det() == 0:
        return None
    sol = mat.LUsolve(sympy.Matrix(rhs))
    return [Fraction(int(v.p), int(v.q)) for v in sol]


def vertex_range(A, b, c):
    """(min, max) of ``c . x`` over ``{A x = b, x >= 0}`` by enumerating bases.

    Returns None when the set is empty. Only usable for tiny systems.
    """
    mat = sympy.Matrix(A)
    aug = mat.row_join(sympy.Matrix(b))
    rank = mat.rank()
    if aug.rank() != rank:
        return None
    # keep an independent set of rows
    rows = []
    for i in range(len(A)):
        trial = rows + [i]
        if sympy.Matrix([A[r] for r in trial]).rank() == len(trial):
            rows = trial
    A_r = [A[i] for i in rows]
    b_r = [b[i] for i in rows]
    n = len(A[0])
    values = []
    for cols in combinations(range(n), rank):
        M = [[row[j] for j in cols] for row in A_r]
        xb = _solve_square(M, b_r)
        if xb is None or any(v < 0 for v in xb):
            continue
        values.append(sum((c[j] * v for j, v in zip(cols, xb)), Fraction(0)))
    if not values:
        return None
    return min(values), max(values)


def ranking_system(labels, edges):
    """``A, b`` rows for ``edge weights == given`` plus ``sum == 1`` over all rankings.

    ``edges`` maps (a, b) -> weight of a before b.
    """
    perms = list(permutations(labels))
    A = [[1 if r.index(a) < r.index(b) else 0 for r in perms] for (a, b) in edges]
    A.append([1] * len(perms))
    b = [Fraction(v) for v in edges.values()] + [Fraction(1)]
    return perms, A, b


# -- faithfulness ---------------------------------------------------------------


def independent_by_rank(joint: dict, a: int, b: int, given: int | None) -> bool:
    """Independence iff every (conditional) contingency matrix has rank <= 1."""
    def values(axis):
        return sorted({k[axis] for k in joint}, key=str)

    va, vb = values(a), values(b)
    slices = [None] if given is None else values(given)
    for s in slices:
        M = sympy.zeros(len(va), len(vb))
        for key, p in joint.items():
            if given is not None and key[given] != s:
                continue
            M[va.index(key[a]), vb.index(key[b])] += sympy.Rational(p.numerator, p.denominator)
        if M.rank() > 1:
            return False
    return True


# -- random inputs --------------------------------------------------------------


def random_distribution(rng: random.Random, n: int, hi: int = 20) -> list[Fraction]:
    raw = [rng.randint(1, hi) for _ in range(n)]
    total = sum(raw)
    return [Fraction(v, total) for v in raw]


def random_rows(rng: random.Random, n: int, k: int) -> list[list[Fraction]]:
    return [random_distribution(rng, n) for _ in range(k)]


def random_counts(rng: random.Random, treatments, covariates, labels, hi=9):
    """Full-support rational counts keyed (t, x, y)."""
    return {
        (t, x, y): Fraction(rng.randint(1, hi), rng.randint(1, 3))
        for t, x, y in product(treatments, covariates, labels)
    }
