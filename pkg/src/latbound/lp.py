"""Exact two-phase simplex over ``Fraction`` with Bland's anti-cycling rule.

Problems have the form::

    maximize  c . x   subject to   A x = b,   x_j >= 0 for flagged j

Free variables are split into a difference of two nonnegative ones.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .arith import RationalMatrix
from .errors import ContractError

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPResult:
    status: str
    value: Fraction | None = None
    x: tuple | None = None

    @property
    def optimal(self) -> bool:
        return self.status == OPTIMAL


def _pivot(t: list, r: int, c: int) -> None:
    piv = t[r][c]
    if piv != 1:
        t[r] = [v / piv for v in t[r]]
    prow = t[r]
    for i, row in enumerate(t):
        if i != r:
            f = row[c]
            if f:
                t[i] = [a - f * b for a, b in zip(row, prow)]


def _run(t: list, basis: list, ncols: int) -> bool:
    """Optimize the tableau in place; row 0 is the objective row.

    Returns False if unbounded. Only the first ``ncols`` columns may enter.
    """
    while True:
        entering = next((j for j in range(ncols) if t[0][j] < 0), None)
        if entering is None:
            return True
        best = None
        for i in range(1, len(t)):
            a = t[i][entering]
            if a > 0:
                ratio = t[i][-1] / a
                key = (ratio, basis[i - 1])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            return False
        r = best[1]
        _pivot(t, r, entering)
        basis[r - 1] = entering


def lp_maximize(objective: Sequence, a_eq, b_eq: Sequence, nonneg=None) -> LPResult:
    """Maximize ``objective . x`` subject to ``a_eq x = b_eq``.

    ``a_eq`` is a :class:`RationalMatrix` or a sequence of rows. ``nonneg`` is a
    sequence of per-variable flags (default: every variable nonnegative).
    """
    rows = a_eq.to_rows() if isinstance(a_eq, RationalMatrix) else [tuple(r) for r in a_eq]
    n = len(objective)
    if any(len(r) != n for r in rows) or len(rows) != len(b_eq):
        raise ContractError("constraint matrix does not match objective/rhs lengths")
    if nonneg is None:
        nonneg = [True] * n
    if len(nonneg) != n:
        raise ContractError("nonneg flags do not match the number of variables")

    # split free variables: x_j = y_j - y'_j
    col_map = []  # (original index, sign)
    for j in range(n):
        col_map.append((j, 1))
    for j in range(n):
        if not nonneg[j]:
            col_map.append((j, -1))
    nv = len(col_map)
    m = len(rows)
    c = [Fraction(objective[j]) * s for j, s in col_map]

    t = []
    for i in range(m):
        row = [Fraction(rows[i][j]) * s for j, s in col_map]
        rhs = Fraction(b_eq[i])
        if rhs < 0:
            row = [-v for v in row]
            rhs = -rhs
        t.append(row + [Fraction(int(k == i)) for k in range(m)] + [rhs])

    # phase 1: maximize -(sum of artificials)
    obj1 = [Fraction(0)] * (nv + m + 1)
    for row in t:
        for j in range(nv):
            obj1[j] -= row[j]
        obj1[-1] -= row[-1]
    tab = [obj1] + t
    basis = [nv + i for i in range(m)]
    _run(tab, basis, nv)
    if tab[0][-1] != 0:
        return LPResult(INFEASIBLE)

    # drive remaining artificials out of the basis, drop redundant rows
    keep = [0]
    for i in range(1, m + 1):
        if basis[i - 1] >= nv:
            col = next((j for j in range(nv) if tab[i][j] != 0), None)
            if col is None:
                continue
            _pivot(tab, i, col)
            basis[i - 1] = col
        keep.append(i)
    basis = [basis[i - 1] for i in keep[1:]]
    tab = [tab[i][:nv] + [tab[i][-1]] for i in keep]

    # phase 2
    obj2 = [-v for v in c] + [Fraction(0)]
    for i, bj in enumerate(basis, start=1):
        f = obj2[bj]
        if f:
            obj2 = [a - f * b for a, b in zip(obj2, tab[i])]
    tab[0] = obj2
    if not _run(tab, basis, nv):
        return LPResult(UNBOUNDED)

    y = [Fraction(0)] * nv
    for i, bj in enumerate(basis, start=1):
        y[bj] = tab[i][-1]
    x = [Fraction(0)] * n
    for (j, s), v in zip(col_map, y):
        x[j] += s * v
    return LPResult(OPTIMAL, tab[0][-1], tuple(x))


def lp_feasible(a_eq, b_eq: Sequence, nonneg=None):
    """Witness of ``a_eq x = b_eq`` (with sign constraints) or ``None``."""
    n = a_eq.cols if isinstance(a_eq, RationalMatrix) else len(a_eq[0])
    res = lp_maximize([0] * n, a_eq, b_eq, nonneg)
    return res.x if res.optimal else None
