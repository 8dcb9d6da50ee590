"""Exact two-phase simplex (Bland's rule) over Fractions.

Solves ``max c.x  s.t.  A x <= b, x >= 0`` with rational data.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass
class LinearProgram:
    """Maximize ``objective`` subject to ``coeffs . x <= rhs`` rows and x >= 0."""

    variables: list[str]
    objective: dict[str, Fraction]
    constraints: list[tuple[dict[str, Fraction], Fraction]] = field(default_factory=list)

    def add(self, coeffs: dict[str, Fraction], rhs: Fraction) -> None:
        self.constraints.append((coeffs, Fraction(rhs)))


@dataclass
class LPResult:
    status: str
    value: Optional[Fraction] = None
    solution: dict[str, Fraction] = field(default_factory=dict)


def _pivot(rows: list[list[Fraction]], basis: list[int], r: int, c: int) -> None:
    prow = rows[r]
    piv = prow[c]
    if piv != _ONE:
        rows[r] = prow = [x / piv for x in prow]
    for i, row in enumerate(rows):
        if i == r:
            continue
        f = row[c]
        if f:
            rows[i] = [x - f * y if y else x for x, y in zip(row, prow)]
    if r < len(basis):
        basis[r] = c


def _run(rows, basis, n_rows: int, allowed: int) -> bool:
    """Primal simplex on the tableau; the last row is the reduced-cost row.

    Reduced costs are stored as ``z_j - c_j`` for a minimization, so a
    column enters while its entry is positive.  Returns False if unbounded.
    """
    obj = rows[n_rows]
    while True:
        obj = rows[n_rows]
        enter = next((j for j in range(allowed) if obj[j] > 0), None)
        if enter is None:
            return True
        best = None
        for i in range(n_rows):
            a = rows[i][enter]
            if a > 0:
                ratio = rows[i][-1] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            return False
        _pivot(rows, basis, best[1], enter)


def lp_solve(lp: LinearProgram) -> LPResult:
    """Exact optimum, or an infeasible/unbounded verdict."""
    names = list(lp.variables)
    col = {v: j for j, v in enumerate(names)}
    n, m = len(names), len(lp.constraints)
    # columns: structural | slack | artificial | rhs
    n_cols = n + m + m + 1
    rows: list[list[Fraction]] = []
    basis: list[int] = []
    artificial_rows = []
    for i, (coeffs, rhs) in enumerate(lp.constraints):
        row = [_ZERO] * n_cols
        for v, a in coeffs.items():
            if a:
                row[col[v]] += Fraction(a)
        row[n + i] = _ONE
        row[-1] = Fraction(rhs)
        if row[-1] < 0:
            row = [-x for x in row]
            row[n + m + i] = _ONE
            basis.append(n + m + i)
            artificial_rows.append(i)
        else:
            basis.append(n + i)
        rows.append(row)

    # phase 1: minimize the sum of artificials
    if artificial_rows:
        obj = [_ZERO] * n_cols
        for i in artificial_rows:
            obj = [x + y for x, y in zip(obj, rows[i])]
        for i in artificial_rows:
            obj[n + m + i] = _ZERO
        rows.append(obj)
        _run(rows, basis, m, n + m)
        if rows[m][-1] > 0:
            return LPResult(INFEASIBLE)
        rows.pop()
        # drive remaining (zero-valued) artificials out of the basis
        for i in range(m):
            if basis[i] >= n + m:
                c = next((j for j in range(n + m) if rows[i][j] != 0), None)
                if c is not None:
                    _pivot(rows, basis, i, c)
    # phase 2: maximize c.x  ==  minimize -c.x
    cost = [_ZERO] * (n + m)
    for v, a in lp.objective.items():
        cost[col[v]] = -Fraction(a)
    obj = [_ZERO] * n_cols
    for j in range(n + m):
        obj[j] = -cost[j]
    for i, b in enumerate(basis):
        if b < n + m and cost[b]:
            cb = cost[b]
            obj = [x + cb * y for x, y in zip(obj, rows[i])]
    # artificial columns stay out of phase 2
    for j in range(n + m, n + 2 * m):
        obj[j] = _ZERO
    rows.append(obj)
    if not _run(rows, basis, m, n + m):
        return LPResult(UNBOUNDED)
    x = {v: _ZERO for v in names}
    for i, b in enumerate(basis):
        if b < n:
            x[names[b]] = rows[i][-1]
    value = sum((Fraction(lp.objective.get(v, 0)) * x[v] for v in names), _ZERO)
    return LPResult(OPTIMAL, value, x)
