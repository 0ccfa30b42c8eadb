"""Exact two-phase simplex over the rationals.

Equality-form LPs only (max obj·v, M·v = rhs, v >= 0), all data coerced to
``Fraction``.  Entering variables are chosen by smallest index among positive
reduced costs and ratio-test ties go to the smallest basis index (Bland's
rule), so the method cannot cycle and the optimal vertex is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .dp import Status


@dataclass(frozen=True)
class RationalLP:
    rows: tuple
    rhs: tuple
    objective: tuple

    def __post_init__(self):
        rows = tuple(tuple(Fraction(x) for x in row) for row in self.rows)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "rhs", tuple(Fraction(x) for x in self.rhs))
        object.__setattr__(self, "objective", tuple(Fraction(x) for x in self.objective))
        width = len(self.objective)
        if any(len(r) != width for r in rows):
            raise ValueError("row width does not match objective length")
        if len(self.rhs) != len(rows):
            raise ValueError("rhs length does not match row count")


@dataclass(frozen=True)
class SimplexResult:
    status: Status
    point: tuple | None = None
    value: Fraction | None = None
    ray: tuple | None = None


def _pivot(tableau, basis, row, col):
    piv = tableau[row][col]
    tableau[row] = [v / piv for v in tableau[row]]
    for i in range(len(tableau)):
        if i == row:
            continue
        f = tableau[i][col]
        if f != 0:
            tableau[i] = [a - f * b for a, b in zip(tableau[i], tableau[row])]
    basis[row] = col


def _optimize(tableau, basis, costs, n_columns):
    """Run pivots until optimal or unbounded; returns entering col on unbounded."""
    m = len(tableau)
    while True:
        in_basis = set(basis)
        entering = None
        for j in range(n_columns):
            if j in in_basis:
                continue
            rc = costs[j] - sum(costs[basis[i]] * tableau[i][j] for i in range(m))
            if rc > 0:
                entering = j
                break
        if entering is None:
            return None
        leaving = None
        best = None
        for i in range(m):
            t = tableau[i][entering]
            if t > 0:
                ratio = tableau[i][-1] / t
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leaving]):
                    best = ratio
                    leaving = i
        if leaving is None:
            return entering
        _pivot(tableau, basis, leaving, entering)


def rational_simplex(lp):
    """Exact optimum of an equality-form LP with nonnegative variables."""
    m = len(lp.rows)
    n = len(lp.objective)
    if m == 0:
        # No constraints: optimum 0 at the origin unless some cost is positive.
        j = next((j for j in range(n) if lp.objective[j] > 0), None)
        if j is None:
            return SimplexResult(Status.OPTIMAL, (Fraction(0),) * n, Fraction(0))
        ray = tuple(Fraction(int(t == j)) for t in range(n))
        return SimplexResult(Status.UNBOUNDED, ray=ray)

    tableau = []
    for row, r in zip(lp.rows, lp.rhs):
        if r < 0:
            row = [-v for v in row]
            r = -r
        tableau.append(list(row) + [Fraction(0)] * m + [r])
    for i in range(m):
        tableau[i][n + i] = Fraction(1)
    basis = [n + i for i in range(m)]

    phase1 = [Fraction(0)] * n + [Fraction(-1)] * m
    _optimize(tableau, basis, phase1, n + m)
    if sum(tableau[i][-1] for i in range(m) if basis[i] >= n) > 0:
        return SimplexResult(Status.INFEASIBLE)

    # Pivot leftover artificials out; rows with no original support are redundant.
    for i in range(m - 1, -1, -1):
        if basis[i] < n:
            continue
        j = next((j for j in range(n) if tableau[i][j] != 0), None)
        if j is None:
            del tableau[i]
            del basis[i]
        else:
            _pivot(tableau, basis, i, j)
    m = len(tableau)
    if m == 0:
        j = next((j for j in range(n) if lp.objective[j] > 0), None)
        if j is None:
            return SimplexResult(Status.OPTIMAL, (Fraction(0),) * n, Fraction(0))
        ray = tuple(Fraction(int(t == j)) for t in range(n))
        return SimplexResult(Status.UNBOUNDED, ray=ray)

    costs = list(lp.objective) + [Fraction(0)] * (len(tableau[0]) - 1 - n)
    entering = _optimize(tableau, basis, costs, n)
    if entering is not None:
        ray = [Fraction(0)] * n
        ray[entering] = Fraction(1)
        for i in range(m):
            if basis[i] < n:
                ray[basis[i]] = -tableau[i][entering]
        return SimplexResult(Status.UNBOUNDED, ray=tuple(ray))

    point = [Fraction(0)] * n
    for i in range(m):
        if basis[i] < n:
            point[basis[i]] = tableau[i][-1]
    value = sum(c * v for c, v in zip(lp.objective, point))
    return SimplexResult(Status.OPTIMAL, tuple(point), value)
