"""Small dense simplex method over :class:`fractions.Fraction`.

Only what the geometry code needs: feasibility of ``A x = b, x >= 0`` and
maximisation of a linear objective over that polytope. Bland's rule keeps
it cycle-free; problem sizes here are tens of rows at most.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

__all__ = ["LPResult", "solve_lp", "find_feasible"]


class LPResult:
    __slots__ = ("status", "x", "value")

    def __init__(self, status: str, x: Optional[list] = None, value=None):
        self.status = status  # "optimal" | "infeasible" | "unbounded"
        self.x = x
        self.value = value

    def __repr__(self):
        return f"LPResult({self.status!r}, value={self.value})"


def _pivot(tab, basis, row, col):
    prow = tab[row]
    inv = 1 / prow[col]
    if inv != 1:
        tab[row] = prow = [v * inv for v in prow]
    for r, other in enumerate(tab):
        if r != row:
            f = other[col]
            if f:
                tab[r] = [a - f * b for a, b in zip(other, prow)]
    basis[row] = col


def _run(tab, basis, ncols, allowed):
    """Maximise the objective held in the last tableau row (stored negated)."""
    m = len(tab) - 1
    while True:
        obj = tab[-1]
        col = next((j for j in range(ncols) if allowed[j] and obj[j] < 0), None)
        if col is None:
            return "optimal"
        best = None
        row = None
        for r in range(m):
            a = tab[r][col]
            if a > 0:
                ratio = tab[r][-1] / a
                if best is None or ratio < best or (ratio == best and basis[r] < basis[row]):
                    best, row = ratio, r
        if row is None:
            return "unbounded"
        _pivot(tab, basis, row, col)


def solve_lp(A: Sequence[Sequence], b: Sequence, c: Optional[Sequence] = None) -> LPResult:
    """Maximise ``c.x`` subject to ``A x = b``, ``x >= 0``.

    With ``c`` omitted only feasibility is decided. Inputs may be ints or
    Fractions; the returned solution is a list of Fractions.
    """
    m = len(A)
    n = len(A[0]) if m else (len(c) if c is not None else 0)
    rows = []
    for i in range(m):
        row = [Fraction(v) for v in A[i]]
        rhs = Fraction(b[i])
        if rhs < 0:
            row = [-v for v in row]
            rhs = -rhs
        rows.append((row, rhs))

    # phase one: one artificial per row
    ncols = n + m
    tab = []
    for i, (row, rhs) in enumerate(rows):
        art = [Fraction(0)] * m
        art[i] = Fraction(1)
        tab.append(row + art + [rhs])
    obj = [Fraction(0)] * (ncols + 1)
    for r in tab:
        for j in range(n):
            obj[j] -= r[j]
        obj[-1] -= r[-1]
    tab.append(obj)
    basis = list(range(n, n + m))
    _run(tab, basis, ncols, [True] * n + [False] * m)
    if tab[-1][-1] != 0:
        return LPResult("infeasible")

    # drive remaining artificials out of the basis where possible
    for r in range(m):
        if basis[r] >= n:
            col = next((j for j in range(n) if tab[r][j] != 0), None)
            if col is not None:
                _pivot(tab, basis, r, col)

    def solution():
        x = [Fraction(0)] * n
        for r in range(m):
            if basis[r] < n:
                x[basis[r]] = tab[r][-1]
        return x

    if c is None:
        return LPResult("optimal", solution(), Fraction(0))

    cvec = [Fraction(v) for v in c]
    obj = [Fraction(0)] * (ncols + 1)
    for j in range(n):
        obj[j] = -cvec[j]
    for r in range(m):
        bj = basis[r]
        if bj < n and cvec[bj]:
            f = cvec[bj]
            obj = [o + f * v for o, v in zip(obj, tab[r])]
    tab[-1] = obj
    status = _run(tab, basis, ncols, [True] * n + [False] * m)
    if status == "unbounded":
        return LPResult("unbounded")
    x = solution()
    return LPResult("optimal", x, sum((cv * xv for cv, xv in zip(cvec, x)), Fraction(0)))


def find_feasible(A, b) -> Optional[list]:
    res = solve_lp(A, b)
    return res.x if res.status == "optimal" else None
