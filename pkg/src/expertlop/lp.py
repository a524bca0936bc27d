"""Exact linear programming over the rationals.

Problems are in equality standard form::

    minimize c @ x  subject to  A @ x == b,  x >= 0

with an integer constraint matrix ``A`` and rational ``b``, ``c``.

``method="auto"`` first runs the floating-point tableau kernel to find a
candidate basis, then checks that basis exactly: primal feasibility of
``B^-1 b`` and nonnegativity of every reduced cost (or, for infeasible
problems, a Farkas vector ``y`` with ``A.T @ y <= 0`` and ``b @ y > 0``). Only
a basis that passes these rational checks is reported. Anything else falls
back to ``method="exact"``: a two-phase tableau simplex with Bland's rule
carried out entirely in :class:`Fraction` arithmetic.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import kernels
from .errors import SolverError
from .rational import as_fraction, common_denominator

log = logging.getLogger(__name__)

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

_FLOAT_TOL = 1e-9


@dataclass(frozen=True)
class LPResult:
    status: str
    x: tuple[Fraction, ...] | None = None
    objective: Fraction | None = None
    method: str = ""
    iterations: int = 0

    @property
    def optimal(self) -> bool:
        return self.status == OPTIMAL


def solve(c: Sequence, A, b: Sequence, *, method: str = "auto", maximize: bool = False) -> LPResult:
    A = np.asarray(A)
    if A.ndim != 2:
        raise SolverError("constraint matrix must be two-dimensional")
    if not np.issubdtype(A.dtype, np.integer):
        raise SolverError("constraint matrix must have an integer dtype")
    m, N = A.shape
    c = [as_fraction(v) for v in c]
    b = [as_fraction(v) for v in b]
    if len(c) != N or len(b) != m:
        raise SolverError(f"shape mismatch: A is {m}x{N}, len(b)={len(b)}, len(c)={len(c)}")
    if maximize:
        c = [-v for v in c]
    A = A.astype(np.int64)
    # rows with negative right-hand side are negated so artificials start feasible
    flip = [v < 0 for v in b]
    if any(flip):
        A = A.copy()
        for i, f in enumerate(flip):
            if f:
                A[i] = -A[i]
                b[i] = -b[i]

    if method == "auto":
        res = _solve_guided(c, A, b)
        if res is None:
            log.debug("float-guided basis not certified; using exact pivoting")
            res = _solve_exact(c, A, b)
    elif method == "exact":
        res = _solve_exact(c, A, b)
    else:
        raise SolverError(f"unknown method {method!r}")
    if maximize and res.objective is not None:
        res = LPResult(res.status, res.x, -res.objective, res.method, res.iterations)
    return res


# -- exact helpers -------------------------------------------------------------


def _inverse(M: list[list[int]]) -> list[list[Fraction]] | None:
    """Gauss-Jordan inverse in rationals; ``None`` if singular."""
    n = len(M)
    aug = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        inv_p = 1 / aug[col][col]
        prow = [v * inv_p for v in aug[col]]
        aug[col] = prow
        for r in range(n):
            if r != col:
                f = aug[r][col]
                if f:
                    row = aug[r]
                    aug[r] = [x - f * y for x, y in zip(row, prow)]
    return [row[n:] for row in aug]


def _column(A: np.ndarray, j: int) -> list[int]:
    m, N = A.shape
    if j < N:
        return [int(v) for v in A[:, j]]
    return [int(i == j - N) for i in range(m)]


def _scaled_reduced_costs(A: np.ndarray, c: Sequence[Fraction], y: Sequence[Fraction]) -> np.ndarray:
    """Integer array proportional (positive factor) to ``c - A.T @ y`` over original columns."""
    scale = common_denominator(list(y) + list(c))
    Y = [int(v * scale) for v in y]
    C = [int(v * scale) for v in c]
    bound = max((abs(v) for v in Y), default=0) * max(int(np.abs(A).max(initial=0)), 1) * max(len(Y), 1)
    cap = max((abs(v) for v in C), default=0)
    if bound + cap < 2**62:
        return np.asarray(C, dtype=np.int64) - A.T @ np.asarray(Y, dtype=np.int64)
    return np.asarray(C, dtype=object) - A.astype(object).T @ np.asarray(Y, dtype=object)


def _certify_optimal(c, A, b, basis) -> LPResult | None:
    m, N = A.shape
    if len(set(basis)) != m:
        return None
    B = [[0] * m for _ in range(m)]
    for k, j in enumerate(basis):
        col = _column(A, j)
        for i in range(m):
            B[i][k] = col[i]
    inv = _inverse(B)
    if inv is None:
        return None
    xb = [sum((inv[k][i] * b[i] for i in range(m) if b[i]), Fraction(0)) for k in range(m)]
    if any(v < 0 for v in xb):
        return None
    x = [Fraction(0)] * N
    for k, j in enumerate(basis):
        if j >= N:
            if xb[k] != 0:
                return None
        else:
            x[j] = xb[k]
    cb = [c[j] if j < N else Fraction(0) for j in basis]
    # y solves B.T y = c_B, i.e. y = inv.T @ c_B
    y = [sum((inv[k][i] * cb[k] for k in range(m) if cb[k]), Fraction(0)) for i in range(m)]
    red = _scaled_reduced_costs(A, c, y)
    if any(red[j] < 0 for j in range(N)):
        return None
    obj = sum((c[j] * x[j] for j in range(N) if x[j]), Fraction(0))
    return LPResult(OPTIMAL, tuple(x), obj, "certified-float-basis")


def _certify_infeasible(A, b, basis) -> bool:
    m, N = A.shape
    if len(set(basis)) != m:
        return False
    B = [[0] * m for _ in range(m)]
    for k, j in enumerate(basis):
        col = _column(A, j)
        for i in range(m):
            B[i][k] = col[i]
    inv = _inverse(B)
    if inv is None:
        return False
    cb = [Fraction(1) if j >= N else Fraction(0) for j in basis]
    y = [sum((inv[k][i] * cb[k] for k in range(m) if cb[k]), Fraction(0)) for i in range(m)]
    if sum((yi * bi for yi, bi in zip(y, b)), Fraction(0)) <= 0:
        return False
    # Farkas: A.T y <= 0 everywhere means no x >= 0 reaches b
    red = _scaled_reduced_costs(A, [Fraction(0)] * N, y)
    return bool(all(red[j] >= 0 for j in range(N)))


# -- float-guided path ---------------------------------------------------------


def _solve_guided(c, A, b) -> LPResult | None:
    m, N = A.shape
    T = np.zeros((m + 1, N + m + 1))
    T[:m, :N] = A
    T[:m, N : N + m] = np.eye(m)
    T[:m, -1] = [float(v) for v in b]
    T[m, :N] = -A.sum(axis=0)
    T[m, -1] = -T[:m, -1].sum()
    basis = np.arange(N, N + m, dtype=np.int64)
    scale = max(1.0, float(np.abs(T[:m, -1]).max(initial=0.0)))
    tol = _FLOAT_TOL * scale
    status, it1 = kernels.simplex_iterate(T, basis, N, N, _FLOAT_TOL)
    if status != kernels.OPTIMAL:
        return None
    if -T[m, -1] > tol:
        if _certify_infeasible(A, b, [int(j) for j in basis]):
            return LPResult(INFEASIBLE, method="certified-float-basis", iterations=it1)
        return None
    cf = np.array([float(v) for v in c] + [0.0] * m)
    T[m, :-1] = cf
    T[m, -1] = 0.0
    for i in range(m):
        T[m] -= cf[basis[i]] * T[i]
    status, it2 = kernels.simplex_iterate(T, basis, N, N, _FLOAT_TOL)
    if status != kernels.OPTIMAL:
        return None
    start = [int(j) for j in basis]
    res = _certify_optimal(c, A, b, start)
    if res is None:
        # the basis may still be exactly feasible; finish with exact pivots from it
        return _solve_exact(c, A, b, start=start)
    return LPResult(res.status, res.x, res.objective, res.method, it1 + it2)


# -- exact two-phase simplex, Bland's rule -------------------------------------


class _Tableau:
    def __init__(self, rows: list[list[Fraction]], basis: list[int]):
        self.rows = rows
        self.basis = basis

    def pivot(self, r: int, j: int, obj: list[Fraction]) -> None:
        prow = self.rows[r]
        p = prow[j]
        if p != 1:
            prow = [v / p for v in prow]
            self.rows[r] = prow
        nz = [k for k, v in enumerate(prow) if v]
        for i, row in enumerate(self.rows):
            if i != r:
                f = row[j]
                if f:
                    for k in nz:
                        row[k] -= f * prow[k]
        f = obj[j]
        if f:
            for k in nz:
                obj[k] -= f * prow[k]
        self.basis[r] = j

    def run(self, obj: list[Fraction], allowed: int, max_iter: int = 1_000_000) -> tuple[str, int]:
        it = 0
        while it < max_iter:
            j = next((k for k in range(allowed) if obj[k] < 0), None)
            if j is None:
                return OPTIMAL, it
            best = None
            r = None
            for i, row in enumerate(self.rows):
                a = row[j]
                if a > 0:
                    q = row[-1] / a
                    if best is None or q < best or (q == best and self.basis[i] < self.basis[r]):
                        best, r = q, i
            if r is None:
                return UNBOUNDED, it
            self.pivot(r, j, obj)
            it += 1
        raise SolverError("exact simplex exceeded its iteration budget")


def _tableau_from_basis(A, b, basis) -> _Tableau | None:
    """Exact tableau ``B^-1 [A | I | b]``, or ``None`` unless ``B^-1 b >= 0``."""
    m, N = A.shape
    if len(set(basis)) != m:
        return None
    B = [[_column(A, j)[i] for j in basis] for i in range(m)]
    inv = _inverse(B)
    if inv is None:
        return None
    full = [[Fraction(int(v)) for v in A[i]] + [Fraction(int(i == k)) for k in range(m)] + [b[i]] for i in range(m)]
    rows = []
    for k in range(m):
        coeffs = [(i, inv[k][i]) for i in range(m) if inv[k][i]]
        row = [Fraction(0)] * (N + m + 1)
        for i, f in coeffs:
            src = full[i]
            for col, v in enumerate(src):
                if v:
                    row[col] += f * v
        rows.append(row)
    if any(row[-1] < 0 or (j >= N and row[-1] != 0) for row, j in zip(rows, basis)):
        return None
    return _Tableau(rows, list(basis))


def _solve_exact(c, A, b, start: list[int] | None = None) -> LPResult:
    m, N = A.shape
    tab = _tableau_from_basis(A, b, start) if start is not None else None
    it1 = 0
    method = "exact-pivoting"
    if tab is not None:
        method = "exact-pivoting-warm"
        obj = [Fraction(0)] * (N + m + 1)
    else:
        rows = []
        for i in range(m):
            row = [Fraction(int(v)) for v in A[i]] + [Fraction(int(i == k)) for k in range(m)] + [b[i]]
            rows.append(row)
        tab = _Tableau(rows, list(range(N, N + m)))
        obj = [Fraction(0)] * (N + m + 1)
        for row in rows:
            for k in range(N):
                obj[k] -= row[k]
            obj[-1] -= row[-1]
        _, it1 = tab.run(obj, N + m)
        if -obj[-1] > 0:
            return LPResult(INFEASIBLE, method=method, iterations=it1)
    # drive zero-level artificials out of the basis; rows that cannot be
    # pivoted on an original column are redundant and dropped
    keep = []
    for r in range(m):
        if tab.basis[r] >= N:
            j = next((k for k in range(N) if tab.rows[r][k] != 0), None)
            if j is None:
                continue
            tab.pivot(r, j, obj)
        keep.append(r)
    tab.rows = [tab.rows[r] for r in keep]
    tab.basis = [tab.basis[r] for r in keep]
    obj = list(c) + [Fraction(0)] * m + [Fraction(0)]
    for r, j in enumerate(tab.basis):
        f = obj[j]
        if f:
            row = tab.rows[r]
            obj = [o - f * v for o, v in zip(obj, row)]
    status, it2 = tab.run(obj, N)
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED, method=method, iterations=it1 + it2)
    x = [Fraction(0)] * N
    for r, j in enumerate(tab.basis):
        x[j] = tab.rows[r][-1]
    value = sum((c[j] * x[j] for j in range(N) if x[j]), Fraction(0))
    return LPResult(OPTIMAL, tuple(x), value, method, it1 + it2)
