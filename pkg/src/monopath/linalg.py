"""Exact rational linear algebra: elimination, rank, and a two-phase simplex."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import PreconditionError

Matrix = list[list[Fraction]]


def to_matrix(rows: Sequence[Sequence[object]]) -> Matrix:
    from .vectors import as_rational

    return [[as_rational(v) for v in row] for row in rows]


def transpose(m: Matrix) -> Matrix:
    return [list(col) for col in zip(*m)] if m else []


def row_echelon(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns (left-to-right pivoting)."""
    a = [list(row) for row in m]
    pivots: list[int] = []
    r = 0
    n_cols = len(a[0]) if a else 0
    for c in range(n_cols):
        p = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        piv = a[r][c]
        a[r] = [v / piv for v in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a, pivots


def rank(m: Matrix) -> int:
    return len(row_echelon(m)[1])


def solve(m: Matrix, rhs: Sequence[Fraction]) -> list[Fraction]:
    """Solve ``m x = rhs``; free variables are set to zero.

    Raises :class:`PreconditionError` when the system is inconsistent.
    """
    n_cols = len(m[0]) if m else 0
    aug = [list(row) + [Fraction(b)] for row, b in zip(m, rhs)]
    red, pivots = row_echelon(aug)
    if n_cols in pivots:
        raise PreconditionError("inconsistent linear system")
    x = [Fraction(0)] * n_cols
    for row, c in zip(red, pivots):
        x[c] = row[-1]
    return x


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    value: Fraction | None = None
    x: tuple[Fraction, ...] | None = None


def _pivot(t: Matrix, basis: list[int], r: int, c: int) -> None:
    piv = t[r][c]
    t[r] = [v / piv for v in t[r]]
    for i in range(len(t)):
        if i != r and t[i][c] != 0:
            f = t[i][c]
            t[i] = [x - f * y for x, y in zip(t[i], t[r])]
    basis[r] = c


def _optimize(t: Matrix, basis: list[int], cost: Sequence[Fraction], columns: range) -> str:
    # Bland: lowest-index improving column, lowest-index leaving variable on ties.
    while True:
        in_basis = set(basis)
        cb = [cost[b] for b in basis]
        entering = None
        for j in columns:
            if j in in_basis:
                continue
            reduced = cost[j] - sum(cb[i] * t[i][j] for i in range(len(t)) if cb[i])
            if reduced < 0:
                entering = j
                break
        if entering is None:
            return "optimal"
        best = None
        for i, row in enumerate(t):
            a = row[entering]
            if a > 0:
                key = (row[-1] / a, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            return "unbounded"
        _pivot(t, basis, best[1], entering)


def simplex_min(c: Sequence[object], a_eq: Sequence[Sequence[object]],
                b_eq: Sequence[object]) -> LPResult:
    """Minimise ``c.x`` subject to ``a_eq x = b_eq``, ``x >= 0``, exactly.

    Textbook two-phase tableau simplex with Bland's rule, so it terminates
    and is deterministic.
    """
    cost = [Fraction(v) for v in c]
    a = to_matrix(a_eq)
    b = [Fraction(v) for v in b_eq]
    m, n = len(a), len(cost)
    if any(len(row) != n for row in a) or len(b) != m:
        raise PreconditionError("LP dimensions do not match")
    t: Matrix = []
    for i in range(m):
        sign = -1 if b[i] < 0 else 1
        art = [Fraction(0)] * m
        art[i] = Fraction(1)
        t.append([sign * v for v in a[i]] + art + [sign * b[i]])
    basis = list(range(n, n + m))

    phase1 = [Fraction(0)] * n + [Fraction(1)] * m
    _optimize(t, basis, phase1, range(n + m))
    if sum(t[i][-1] for i in range(m) if basis[i] >= n) > 0:
        return LPResult("infeasible")

    # drive zero-level artificials out of the basis; drop redundant rows
    i = 0
    while i < len(t):
        if basis[i] >= n:
            j = next((j for j in range(n) if t[i][j] != 0), None)
            if j is None:
                del t[i]
                del basis[i]
                continue
            _pivot(t, basis, i, j)
        i += 1
    t = [row[:n] + [row[-1]] for row in t]

    status = _optimize(t, basis, cost, range(n))
    if status == "unbounded":
        return LPResult("unbounded")
    x = [Fraction(0)] * n
    for row, var in zip(t, basis):
        x[var] = row[-1]
    value = sum((ci * xi for ci, xi in zip(cost, x)), Fraction(0))
    return LPResult("optimal", value, tuple(x))


def l1_distance_to_span(point: Sequence[Fraction], generators: Sequence[Sequence[Fraction]]) -> LPResult:
    """``min_t || point - sum_k t_k g_k ||_1`` as an exact LP.

    Standard absolute-value reformulation: ``t = t+ - t-`` and the residual
    ``point - G t = p - q`` with ``p, q >= 0``; minimise ``sum(p + q)``.
    Returned ``x`` holds the coefficients ``t``.
    """
    dim = len(point)
    k = len(generators)
    rows = []
    for i in range(dim):
        g_i = [Fraction(g[i]) for g in generators]
        unit = [Fraction(0)] * dim
        unit[i] = Fraction(1)
        rows.append(g_i + [-v for v in g_i] + unit + [-v for v in unit])
    cost = [Fraction(0)] * (2 * k) + [Fraction(1)] * (2 * dim)
    res = simplex_min(cost, rows, point)
    if res.status != "optimal":
        return res
    t = tuple(res.x[j] - res.x[k + j] for j in range(k))
    return LPResult("optimal", res.value, t)
