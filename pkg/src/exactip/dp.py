"""Dynamic programming over right-hand sides for standard-form IPs.

The core object is `RhsValueTable`: for a column set ``A_S`` and costs
``c_S`` it records, for every vector ``v`` inside a box ``|v|_inf <= R``, the
exact maximum of ``c_S·x`` over ``A_S·x = v`` with ``0 <= x_j <= var_bound``.
It is computed by a layered recursion over the columns, one bounded-count
expansion per column (binary-split, so a layer costs ``O(states·log M)``).

States are kept either in a dict keyed by the sum vector, or, when the box is
small enough, in a dense m-dimensional int64 array which the expansion walks
with shifted-slice maxima.  Both backends produce identical tables; callers
pick a ``box_radius`` that dominates every partial sum of an admissible
assignment (``max-entry · n · var_bound`` does), so the box clipping never
excludes a valid assignment.

Assignments are not stored per state.  All column layers are retained and the
lexicographically smallest optimal assignment for a target vector is rebuilt
on demand by a forward scan, which keeps the hot loop free of tuple juggling.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

import numpy as np

from .linalg import IntMatrix

_NEG = -(2**62)
_DENSE_CELL_LIMIT = 6_000_000
_DENSE_VALUE_LIMIT = 2**60


class Status(str, Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class Solution:
    """Solver outcome: a status plus whatever certifies it.

    ``x`` and ``objective`` are present for OPTIMAL (objective is an int, or a
    Fraction for mixed problems, where ``y`` carries the continuous part).
    ``certificate`` is an improving ray for UNBOUNDED.  ``boxed`` marks
    oracle results that are exact only within an enumeration box.
    """

    status: Status
    x: tuple | None = None
    objective: object = None
    certificate: tuple | None = None
    y: tuple | None = None
    boxed: bool = False


@dataclass(frozen=True)
class StandardIP:
    """max c·x subject to A·x = b, x integer and componentwise >= 0."""

    a: IntMatrix
    b: tuple
    c: tuple

    def __post_init__(self):
        object.__setattr__(self, "b", tuple(int(v) for v in self.b))
        object.__setattr__(self, "c", tuple(int(v) for v in self.c))
        if len(self.b) != self.a.rows:
            raise ValueError("rhs length does not match row count")
        if len(self.c) != self.a.cols:
            raise ValueError("objective length does not match column count")

    @property
    def m(self):
        return self.a.rows

    @property
    def n(self):
        return self.a.cols

    @property
    def max_entry(self):
        return self.a.max_abs()

    @property
    def max_entry_with_rhs(self):
        return max(self.max_entry, max(abs(v) for v in self.b))


def papadimitriou_bound(ip):
    """Classic component bound (n+1)·(m·max(|A|,|b|))^m for bounded optima."""
    return (ip.n + 1) * (ip.m * ip.max_entry_with_rhs) ** ip.m


def small_component_bound(m, delta):
    """(m+2)·(m·delta)^m: all but at most m components of some optimum stay below this."""
    if m < 1 or delta < 1:
        raise ValueError("need m >= 1 and delta >= 1")
    return (m + 2) * (m * delta) ** m


def _parts(bound):
    # Binary split of a count cap: subset sums of the parts cover 0..bound.
    parts = []
    step = 1
    while bound > 0:
        take = min(step, bound)
        parts.append(take)
        bound -= take
        step *= 2
    return parts


class RhsValueTable:
    """Best bounded-variable value for every achievable right-hand side."""

    def __init__(self, columns, costs, var_bound, box_radius):
        if var_bound < 0 or box_radius < 0:
            raise ValueError("var_bound and box_radius must be >= 0")
        self.columns = tuple(tuple(c) for c in columns)
        self.costs = tuple(costs)
        self.var_bound = var_bound
        self.box_radius = box_radius
        self.m = len(self.columns[0]) if self.columns else 1
        self._dense = self._dense_eligible()
        self._layers = self._build_dense() if self._dense else self._build_dict()
        self._arrays = None

    def _dense_eligible(self):
        if not self.columns:
            return False
        cells = (2 * self.box_radius + 1) ** self.m
        if cells > _DENSE_CELL_LIMIT:
            return False
        worst = sum(abs(c) for c in self.costs) * max(self.var_bound, 1)
        return worst < _DENSE_VALUE_LIMIT

    def _build_dict(self):
        r = self.box_radius
        layers = [None] * (len(self.columns) + 1)
        layers[-1] = {(0,) * self.m: 0}
        for j in range(len(self.columns) - 1, -1, -1):
            col = self.columns[j]
            cost = self.costs[j]
            cur = dict(layers[j + 1])
            for p in _parts(self.var_bound):
                shift = tuple(p * a for a in col)
                add = p * cost
                if all(s == 0 for s in shift):
                    if add > 0:
                        for v, val in list(cur.items()):
                            cur[v] = val + add
                    continue
                for v, val in list(cur.items()):
                    w = tuple(a + s for a, s in zip(v, shift))
                    if any(abs(x) > r for x in w):
                        continue
                    nv = val + add
                    if cur.get(w, _NEG) < nv:
                        cur[w] = nv
            layers[j] = cur
        return layers

    def _build_dense(self):
        r = self.box_radius
        side = 2 * r + 1
        shape = (side,) * self.m
        base = np.full(shape, _NEG, dtype=np.int64)
        base[(r,) * self.m] = 0
        layers = [None] * (len(self.columns) + 1)
        layers[-1] = base
        for j in range(len(self.columns) - 1, -1, -1):
            col = self.columns[j]
            cost = self.costs[j]
            arr = layers[j + 1].copy()
            for p in _parts(self.var_bound):
                shift = [p * a for a in col]
                add = p * cost
                if all(s == 0 for s in shift):
                    if add > 0:
                        arr[arr > _NEG // 2] += add
                    continue
                dst, src = [], []
                ok = True
                for s in shift:
                    if abs(s) >= side:
                        ok = False
                        break
                    dst.append(slice(max(s, 0), side + min(s, 0)))
                    src.append(slice(max(-s, 0), side + min(-s, 0)))
                if not ok:
                    continue
                dview = arr[tuple(dst)]
                np.maximum(dview, arr[tuple(src)] + add, out=dview)
            layers[j] = arr
        return layers

    def _lookup(self, layer, v):
        r = self.box_radius
        if any(abs(x) > r for x in v):
            return None
        if self._dense:
            val = int(self._layers[layer][tuple(x + r for x in v)])
            return None if val <= _NEG // 2 else val
        return self._layers[layer].get(tuple(v))

    def value(self, v):
        """Best value for right-hand side ``v``; None when unachievable."""
        if len(v) != self.m:
            raise ValueError("vector length does not match row count")
        return self._lookup(0, tuple(int(x) for x in v))

    def __contains__(self, v):
        return self.value(v) is not None

    def __len__(self):
        return self.arrays()[0].shape[0] if self._dense else len(self._layers[0])

    def items(self):
        """Iterate (vector, value) over all achievable right-hand sides."""
        if self._dense:
            vecs, vals = self.arrays()
            for row, val in zip(vecs.tolist(), vals.tolist()):
                yield tuple(row), val
        else:
            yield from self._layers[0].items()

    def arrays(self):
        """Achievable vectors and values as (T, m) and (T,) int64 arrays."""
        if self._arrays is None:
            if self._dense:
                mask = self._layers[0] > _NEG // 2
                coords = np.argwhere(mask) - self.box_radius
                vals = self._layers[0][mask]
                self._arrays = (coords.astype(np.int64), vals.astype(np.int64))
            else:
                items = list(self._layers[0].items())
                if items:
                    coords = np.array([v for v, _ in items], dtype=np.int64)
                    vals = np.array([val for _, val in items], dtype=np.int64)
                else:
                    coords = np.empty((0, self.m), dtype=np.int64)
                    vals = np.empty((0,), dtype=np.int64)
                self._arrays = (coords, vals)
        return self._arrays

    def assignment(self, v):
        """Lexicographically smallest optimal assignment for ``v``, or None."""
        v = tuple(int(x) for x in v)
        target = self._lookup(0, v)
        if target is None:
            return None
        out = []
        rem = v
        for j, (col, cost) in enumerate(zip(self.columns, self.costs)):
            for t in range(self.var_bound + 1):
                w = tuple(a - t * b for a, b in zip(rem, col))
                nxt = self._lookup(j + 1, w)
                if nxt is not None and nxt + t * cost == target:
                    out.append(t)
                    rem = w
                    target = nxt
                    break
            else:
                raise AssertionError("table reconstruction failed")
        return tuple(out)


def build_rhs_table(a_s, c_s, var_bound, box_radius):
    """Table of exact optima of max c_S·x, A_S·x = v, 0 <= x <= var_bound.

    ``box_radius`` must dominate every partial sum of an admissible
    assignment for the table to be lossless; ``max|A_S| · n · var_bound``
    always does.
    """
    if len(c_s) != a_s.cols:
        raise ValueError("cost length does not match column count")
    return RhsValueTable(a_s.columns(), c_s, var_bound, box_radius)


def default_box_radius(ip, var_bound):
    """Box that contains b and every partial sum with components <= var_bound."""
    return max(max(abs(v) for v in ip.b), ip.n * ip.max_entry * var_bound)


def dp_solve(ip, var_bound):
    """Exact optimum of the instance restricted to 0 <= x_j <= var_bound.

    Never reports UNBOUNDED.  With ``var_bound = papadimitriou_bound(ip)``
    this is the true optimum of any feasible bounded instance.
    """
    if var_bound < 0:
        raise ValueError("var_bound must be >= 0")
    table = build_rhs_table(ip.a, ip.c, var_bound, default_box_radius(ip, var_bound))
    value = table.value(ip.b)
    if value is None:
        return Solution(Status.INFEASIBLE)
    return Solution(Status.OPTIMAL, x=table.assignment(ip.b), objective=value)
