"""Hot numeric kernels, each with a numba and a pure-numpy implementation.

``pair_incidence`` builds the ranking-by-pair 0/1 matrix that every
polytope computation starts from (n! rows). ``simplex_iterate`` is the
floating-point tableau pivoting loop used to *locate* an optimal basis; the
exact solver in :mod:`expertlop.lp` then certifies that basis in rational
arithmetic, so no float result is ever trusted on its own.

The module-level names dispatch to the numba versions unless numba is missing
or ``EXPERTLOP_DISABLE_NUMBA`` is set. Both variants stay importable for tests
and benchmarks via :data:`IMPLEMENTATIONS`.
"""

from __future__ import annotations

import numpy as np

from ._accel import BACKEND, HAVE_NUMBA, njit

OPTIMAL = 0
ITERATION_LIMIT = 1
UNBOUNDED = 2

# consecutive degenerate pivots tolerated before switching to Bland's rule
_STALL_LIMIT = 50


def _pair_incidence_loops(perms, pairs):
    n_rank, n = perms.shape
    m = pairs.shape[0]
    out = np.zeros((n_rank, m), dtype=np.uint8)
    pos = np.empty(n, dtype=np.int64)
    for r in range(n_rank):
        for k in range(n):
            pos[perms[r, k]] = k
        for e in range(m):
            if pos[pairs[e, 0]] < pos[pairs[e, 1]]:
                out[r, e] = 1
    return out


def _pair_incidence_numpy(perms, pairs):
    perms = np.asarray(perms, dtype=np.int64)
    pairs = np.asarray(pairs, dtype=np.int64).reshape(-1, 2)
    pos = np.argsort(perms, axis=1)
    return (pos[:, pairs[:, 0]] < pos[:, pairs[:, 1]]).astype(np.uint8)


def _simplex_iterate_loops(T, basis, n_enter, n_orig, tol, max_iter):
    m = T.shape[0] - 1
    ncol = T.shape[1] - 1
    stall = 0
    it = 0
    while it < max_iter:
        bland = stall > _STALL_LIMIT
        j = -1
        best = -tol
        for c in range(n_enter):
            d = T[m, c]
            if d < -tol:
                if bland:
                    j = c
                    break
                if d < best:
                    best = d
                    j = c
        if j < 0:
            return OPTIMAL, it
        r = -1
        ratio = np.inf
        for i in range(m):
            a = T[i, j]
            if basis[i] >= n_orig and T[i, ncol] <= tol and (a > tol or a < -tol):
                # artificial at zero level: it must leave rather than grow
                q = 0.0
            elif a > tol:
                q = T[i, ncol] / a
            else:
                continue
            if r < 0 or q < ratio - tol:
                r = i
                ratio = q
            elif q <= ratio + tol and basis[i] < basis[r]:
                r = i
                if q < ratio:
                    ratio = q
        if r < 0:
            return UNBOUNDED, it
        if ratio <= tol:
            stall += 1
        else:
            stall = 0
        piv = T[r, j]
        for c in range(ncol + 1):
            T[r, c] /= piv
        for i in range(m + 1):
            if i != r:
                f = T[i, j]
                if f != 0.0:
                    for c in range(ncol + 1):
                        T[i, c] -= f * T[r, c]
        basis[r] = j
        it += 1
    return ITERATION_LIMIT, it


def _simplex_iterate_numpy(T, basis, n_enter, n_orig, tol, max_iter):
    m = T.shape[0] - 1
    stall = 0
    it = 0
    while it < max_iter:
        d = T[m, :n_enter]
        candidates = np.flatnonzero(d < -tol)
        if candidates.size == 0:
            return OPTIMAL, it
        if stall > _STALL_LIMIT:
            j = int(candidates[0])
        else:
            j = int(candidates[np.argmin(d[candidates])])
        col = T[:m, j]
        rhs = T[:m, -1]
        art = (basis >= n_orig) & (rhs <= tol)
        blocking = np.where(art, np.abs(col) > tol, col > tol)
        if not blocking.any():
            return UNBOUNDED, it
        ratios = np.full(m, np.inf)
        safe = blocking & ~art
        ratios[safe] = rhs[safe] / col[safe]
        ratios[blocking & art] = 0.0
        best = ratios.min()
        tied = np.flatnonzero(ratios <= best + tol)
        r = int(tied[np.argmin(basis[tied])])
        stall = stall + 1 if best <= tol else 0
        T[r] /= T[r, j]
        f = T[:, j].copy()
        f[r] = 0.0
        T -= np.outer(f, T[r])
        basis[r] = j
        it += 1
    return ITERATION_LIMIT, it


IMPLEMENTATIONS = {
    "numpy": {
        "pair_incidence": _pair_incidence_numpy,
        "simplex_iterate": _simplex_iterate_numpy,
    },
}

if HAVE_NUMBA:
    IMPLEMENTATIONS["numba"] = {
        "pair_incidence": njit(cache=True)(_pair_incidence_loops),
        "simplex_iterate": njit(cache=True)(_simplex_iterate_loops),
    }


def pair_incidence(perms, pairs) -> np.ndarray:
    """0/1 matrix ``out[r, e] = 1`` iff ``pairs[e][0]`` precedes ``pairs[e][1]`` in ``perms[r]``."""
    perms = np.ascontiguousarray(perms, dtype=np.int64)
    pairs = np.ascontiguousarray(np.asarray(pairs, dtype=np.int64).reshape(-1, 2))
    return IMPLEMENTATIONS[BACKEND]["pair_incidence"](perms, pairs)


def simplex_iterate(T, basis, n_enter, n_orig, tol=1e-9, max_iter=50_000):
    """Pivot the float tableau ``T`` in place until optimal.

    ``T`` has the constraint rows first and the reduced-cost row last; the
    final column is the right-hand side. Only columns ``< n_enter`` may enter
    the basis. Returns ``(status, iterations)``.
    """
    status, it = IMPLEMENTATIONS[BACKEND]["simplex_iterate"](
        T, basis, int(n_enter), int(n_orig), float(tol), int(max_iter)
    )
    return int(status), int(it)
