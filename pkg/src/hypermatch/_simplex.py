"""Exact revised simplex over the integers.

The basis inverse is kept fraction-free: ``Binv / D`` with ``Binv`` an
integer matrix and ``D = |det B|``. Each pivot updates every row as
``(p * row - d_i * pivot_row) / D``, and the division is exact because the
result is an adjugate entry. Leaving variables follow Bland's rule.
Entering variables follow Dantzig's rule until degeneracy stalls progress,
then Bland's rule, so the method terminates on degenerate problems too.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

Column = Sequence[tuple[int, int]]

STALL = 50


@dataclass
class LPResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    x: list[Fraction] | None = None
    objective: Fraction | None = None
    farkas: list[Fraction] | None = None
    pivots: int = 0


class _Tableau:
    def __init__(self, m: int, cols: list[list[tuple[int, int]]], b: list[int], basis: list[int]):
        self.m = m
        self.cols = cols
        self.binv = [[int(i == j) for j in range(m)] for i in range(m)]
        self.D = 1
        self.xb = list(b)
        self.basis = basis
        self.in_basis = set(basis)
        self.pivots = 0

    def column(self, j: int) -> list[int]:
        binv = self.binv
        out = [0] * self.m
        for r, a in self.cols[j]:
            for i in range(self.m):
                x = binv[i][r]
                if x:
                    out[i] += x * a
        return out

    def duals(self, cost: Sequence[int]) -> list[int]:
        y = [0] * self.m
        for i, j in enumerate(self.basis):
            c = cost[j]
            if c:
                row = self.binv[i]
                for r in range(self.m):
                    if row[r]:
                        y[r] += c * row[r]
        return y

    def pivot(self, r: int, q: int, d: list[int]) -> None:
        p = d[r]
        D = self.D
        binv, xb = self.binv, self.xb
        prow = binv[r]
        xr = xb[r]
        for i in range(self.m):
            if i == r:
                continue
            di = d[i]
            row = binv[i]
            if di:
                binv[i] = [(p * a - di * c) // D for a, c in zip(row, prow)]
                xb[i] = (p * xb[i] - di * xr) // D
            else:
                binv[i] = [p * a // D for a in row]
                xb[i] = p * xb[i] // D
        if p < 0:
            for i in range(self.m):
                binv[i] = [-a for a in binv[i]]
                xb[i] = -xb[i]
            p = -p
        self.D = p
        self.in_basis.discard(self.basis[r])
        self.basis[r] = q
        self.in_basis.add(q)
        self.pivots += 1

    def run(self, cost: Sequence[int], allowed: int) -> str:
        """Minimize ``cost`` entering only columns ``< allowed``.

        Dantzig's rule picks the entering column until ``STALL`` consecutive
        degenerate pivots; from then on Bland's rule, which cannot cycle.
        """
        cols = self.cols
        stall = 0
        while True:
            y = self.duals(cost)
            D = self.D
            q = -1
            best = 0
            bland = stall >= STALL
            for j in range(allowed):
                if j in self.in_basis:
                    continue
                rc = D * cost[j]
                for r, a in cols[j]:
                    rc -= y[r] * a
                if rc < best:
                    q, best = j, rc
                    if bland:
                        break
            if q < 0:
                return "optimal"
            d = self.column(q)
            r = -1
            for i in range(self.m):
                if d[i] > 0:
                    if r < 0:
                        r = i
                        continue
                    lhs = self.xb[i] * d[r]
                    rhs = self.xb[r] * d[i]
                    if lhs < rhs or (lhs == rhs and self.basis[i] < self.basis[r]):
                        r = i
            if r < 0:
                return "unbounded"
            stall = stall + 1 if self.xb[r] == 0 else 0
            self.pivot(r, q, d)


def solve(
    n_rows: int,
    columns: Sequence[Column],
    rhs: Sequence[int],
    cost: Sequence[int] | None = None,
    slack: dict[int, int] | None = None,
) -> LPResult:
    """Minimize ``cost . x`` subject to ``A x = rhs``, ``x >= 0``, all data integer.

    ``columns[j]`` lists the nonzero ``(row, coefficient)`` entries of column
    ``j``. ``slack`` maps a row to a column that is the unit vector of that row;
    such columns seed the starting basis, other rows get artificials. On
    infeasibility the phase-one duals are returned as a Farkas vector ``y``
    with ``y . rhs > 0`` and ``y . A_j <= 0`` for every column.
    """
    ncol = len(columns)
    sign = [-1 if v < 0 else 1 for v in rhs]
    cols = [[(r, a * sign[r]) for r, a in col if a] for col in columns]
    b = [v * s for v, s in zip(rhs, sign)]
    basis = [-1] * n_rows
    for r, j in (slack or {}).items():
        if cols[j] == [(r, 1)]:
            basis[r] = j
    n_art = 0
    for r in range(n_rows):
        if basis[r] < 0:
            basis[r] = ncol + n_art
            cols.append([(r, 1)])
            n_art += 1
    tab = _Tableau(n_rows, cols, b, basis)

    if n_art:
        c1 = [0] * ncol + [1] * n_art
        tab.run(c1, len(cols))
        infeas = sum(c1[j] * x for j, x in zip(tab.basis, tab.xb))
        if infeas > 0:
            y = tab.duals(c1)
            return LPResult(
                "infeasible",
                farkas=[Fraction(v * s, tab.D) for v, s in zip(y, sign)],
                pivots=tab.pivots,
            )
        # pivot zero-level artificials out where a structural column allows it
        for i in range(n_rows):
            if tab.basis[i] < ncol:
                continue
            row = tab.binv[i]
            for j in range(ncol):
                if j in tab.in_basis:
                    continue
                if sum(row[r] * a for r, a in cols[j]):
                    tab.pivot(i, j, tab.column(j))
                    break

    c2 = list(cost) + [0] * n_art if cost is not None else [0] * len(cols)
    status = tab.run(c2, ncol) if cost is not None else "optimal"
    if status == "unbounded":
        return LPResult("unbounded", pivots=tab.pivots)
    x = [Fraction(0)] * ncol
    for j, v in zip(tab.basis, tab.xb):
        if j < ncol:
            x[j] = Fraction(v, tab.D)
    obj = sum((Fraction(c) * v for c, v in zip(cost, x)), Fraction(0)) if cost is not None else Fraction(0)
    return LPResult("optimal", x=x, objective=obj, pivots=tab.pivots)
