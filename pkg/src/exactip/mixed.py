"""Mixed-integer extension of the decomposition solver.

The integer part of an optimum decomposes exactly as in the pure case: a
bounded part handled by the right-hand-side value table and at most m large
components on independent columns.  What remains once a table entry ``b''``
is fixed is a small mixed program (at most m integer variables plus the
continuous block), solved exactly by branch and bound over the rational
simplex.

To avoid running branch and bound for every table entry, each candidate is
first screened against a weak-duality bound: the dual feasible set of the
subproblem relaxation does not depend on the right-hand side, so a handful
of dual vertices gives an upper bound for all entries at once.  Candidates
are processed best-bound-first and the scan stops as soon as no bound can
beat the incumbent.  Screening uses floats with a safety margin; incumbent
comparisons are always exact rationals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from .decomposition import _kernel_norm_cap, _independent_subsets, improving_ray
from .dp import Solution, Status, build_rhs_table, small_component_bound
from .errors import InvariantError, NodeLimitExceeded
from .linalg import IntMatrix, gcd_normalize_row
from .simplex import RationalLP, SimplexResult, rational_simplex


@dataclass(frozen=True)
class MixedIP:
    """max c·x + d·y subject to A·x + B·y = b, x integer >= 0, y rational >= 0.

    ``b_cols`` is the continuous-variable matrix B; None means no continuous
    variables at all (the pure-integer degeneration).
    """

    a: IntMatrix
    b_cols: IntMatrix | None
    b: tuple
    c: tuple
    d: tuple

    def __post_init__(self):
        object.__setattr__(self, "b", tuple(int(v) for v in self.b))
        object.__setattr__(self, "c", tuple(int(v) for v in self.c))
        object.__setattr__(self, "d", tuple(int(v) for v in self.d))
        if len(self.b) != self.a.rows:
            raise ValueError("rhs length does not match row count")
        if len(self.c) != self.a.cols:
            raise ValueError("integer objective length does not match columns")
        if self.b_cols is None:
            if self.d:
                raise ValueError("continuous costs given without continuous columns")
        else:
            if self.b_cols.rows != self.a.rows:
                raise ValueError("continuous block row count mismatch")
            if len(self.d) != self.b_cols.cols:
                raise ValueError("continuous objective length mismatch")

    @property
    def m(self):
        return self.a.rows

    @property
    def n(self):
        return self.a.cols

    @property
    def l(self):
        return 0 if self.b_cols is None else self.b_cols.cols


@dataclass(frozen=True)
class BnBResult:
    status: Status
    x: tuple | None = None
    y: tuple | None = None
    value: Fraction | None = None
    ray: tuple | None = None


class _BBProblem:
    """Rows over (integer part, continuous part); coefficients may be rational."""

    def __init__(self, x_rows, y_rows, rhs, x_costs, y_costs):
        self.x_rows = [tuple(Fraction(v) for v in r) for r in x_rows]
        self.y_rows = [tuple(Fraction(v) for v in r) for r in y_rows]
        self.rhs = [Fraction(v) for v in rhs]
        self.x_costs = [Fraction(v) for v in x_costs]
        self.y_costs = [Fraction(v) for v in y_costs]
        self.k = len(self.x_costs)
        self.l = len(self.y_costs)

    def with_row(self, x_row, y_row, rhs):
        return _BBProblem(
            self.x_rows + [x_row],
            self.y_rows + [y_row],
            self.rhs + [rhs],
            self.x_costs,
            self.y_costs,
        )

    def with_costs(self, x_costs, y_costs):
        return _BBProblem(self.x_rows, self.y_rows, self.rhs, x_costs, y_costs)


def _node_lp(prob, bounds):
    """Equality-form LP for a branch node; x_j is shifted by its lower bound."""
    k, l = prob.k, prob.l
    ub_rows = [(j, ub - bounds[j][0]) for j, (_, ub) in enumerate(bounds) if ub is not None]
    n_vars = k + len(ub_rows) + l
    rows, new_rhs = [], []
    for x_row, y_row, r in zip(prob.x_rows, prob.y_rows, prob.rhs):
        row = [Fraction(0)] * n_vars
        shift = Fraction(0)
        for j in range(k):
            row[j] = x_row[j]
            shift += x_row[j] * bounds[j][0]
        for j in range(l):
            row[k + len(ub_rows) + j] = y_row[j]
        rows.append(row)
        new_rhs.append(r - shift)
    for slot, (j, width) in enumerate(ub_rows):
        row = [Fraction(0)] * n_vars
        row[j] = Fraction(1)
        row[k + slot] = Fraction(1)
        rows.append(row)
        new_rhs.append(Fraction(width))
    obj = list(prob.x_costs) + [Fraction(0)] * len(ub_rows) + list(prob.y_costs)
    offset = sum(c * bounds[j][0] for j, c in enumerate(prob.x_costs))
    return RationalLP(tuple(rows), tuple(new_rhs), tuple(obj)), offset, len(ub_rows)


def _scale_ray(ray):
    scale = math.lcm(*(v.denominator for v in ray)) if ray else 1
    return tuple(int(v * scale) for v in ray)


def _bb(prob, node_limit, int_box, feasibility_only, budget=None):
    """Depth-first branch and bound over the integer part of ``prob``.

    ``budget`` is a shared mutable node counter so a whole refinement
    sequence stays within one limit.
    """
    k = prob.k
    work = prob.with_costs([0] * k, [0] * prob.l) if feasibility_only else prob
    stack = [tuple((0, int_box) for _ in range(k))]
    best = None
    if budget is None:
        budget = [0]
    while stack:
        budget[0] += 1
        if budget[0] > node_limit:
            raise NodeLimitExceeded(f"branch and bound exceeded {node_limit} nodes")
        bounds = stack.pop()
        lp, offset, n_ub = _node_lp(work, bounds)
        res = rational_simplex(lp)
        if res.status is Status.INFEASIBLE:
            continue
        if res.status is Status.UNBOUNDED:
            # Decide feasibility at this node; surface the ray only if an
            # integral point exists here.
            feas_lp, _, _ = _node_lp(work.with_costs([0] * k, [0] * prob.l), bounds)
            probe = rational_simplex(feas_lp)
            if probe.status is Status.INFEASIBLE:
                continue
            point = probe.point
            frac = next((j for j in range(k) if point[j].denominator != 1), None)
            if frac is None:
                return BnBResult(Status.UNBOUNDED, ray=_scale_ray(res.ray))
            res = SimplexResult(Status.OPTIMAL, point, Fraction(0))
        value = res.value + offset
        if best is not None and value < best.value:
            continue
        point = res.point
        xs = [bounds[j][0] + point[j] for j in range(k)]
        frac = next((j for j in range(k) if xs[j].denominator != 1), None)
        if frac is None:
            x = tuple(int(v) for v in xs)
            y = tuple(point[k + n_ub :])
            cand = BnBResult(Status.OPTIMAL, x, y, value)
            if (
                best is None
                or cand.value > best.value
                or (cand.value == best.value and (cand.x, cand.y) < (best.x, best.y))
            ):
                best = cand
            if feasibility_only:
                return best
            continue
        floor = math.floor(xs[frac])
        lb, ub = bounds[frac]
        upper = list(bounds)
        upper[frac] = (floor + 1, ub)
        lower = list(bounds)
        lower[frac] = (lb, floor)
        stack.append(tuple(upper))
        stack.append(tuple(lower))
    if best is None:
        return BnBResult(Status.INFEASIBLE)
    return best


def branch_and_bound(
    int_cols,
    cont_cols,
    rhs,
    int_costs,
    cont_costs,
    node_limit=10**6,
    int_box=None,
    feasibility_only=False,
    lex_refine=True,
):
    """Exact optimum of a small mixed program by branch and bound.

    ``int_cols`` carries the integer-variable columns (independent in the
    intended use), ``cont_cols`` the continuous block; either may be None.
    ``int_box`` optionally caps every integer variable when the caller has an
    instance-level box.  Exhausting ``node_limit`` raises NodeLimitExceeded
    rather than returning a possibly wrong answer.

    With ``lex_refine`` (the default) optimal-value ties are resolved to the
    lexicographically smallest integer part: the optimal value is pinned as
    an extra equality row and each x_j is minimized in turn, exactly.  With
    ``feasibility_only`` the objective is ignored and the first feasible
    point is returned.
    """
    k = int_cols.cols if int_cols is not None else 0
    l = cont_cols.cols if cont_cols is not None else 0
    if k == 0:
        if l == 0:
            if all(v == 0 for v in rhs):
                return BnBResult(Status.OPTIMAL, (), (), Fraction(0))
            return BnBResult(Status.INFEASIBLE)
        lp = RationalLP(
            tuple(tuple(Fraction(cont_cols[i, j]) for j in range(l)) for i in range(len(rhs))),
            tuple(Fraction(v) for v in rhs),
            tuple(Fraction(c) for c in cont_costs),
        )
        res = rational_simplex(lp)
        if res.status is Status.OPTIMAL:
            return BnBResult(Status.OPTIMAL, (), res.point, res.value)
        if res.status is Status.UNBOUNDED:
            return BnBResult(Status.UNBOUNDED, ray=res.ray)
        return BnBResult(Status.INFEASIBLE)

    prob = _BBProblem(
        [int_cols.row(i) for i in range(int_cols.rows)],
        [cont_cols.row(i) for i in range(int_cols.rows)] if l else [[] for _ in range(int_cols.rows)],
        rhs,
        int_costs,
        cont_costs,
    )
    budget = [0]
    res = _bb(prob, node_limit, int_box, feasibility_only, budget)
    if not lex_refine or feasibility_only or res.status is not Status.OPTIMAL:
        return res

    # Pin the optimal value, then minimize each integer coordinate in turn.
    pinned = prob.with_row(prob.x_costs, prob.y_costs, res.value)
    fixed = []
    for j in range(k):
        obj = [Fraction(-1) if t == j else Fraction(0) for t in range(k)]
        sub = pinned.with_costs(obj, [0] * l)
        r = _bb(sub, node_limit, int_box, False, budget)
        if r.status is not Status.OPTIMAL:
            raise InvariantError("lexicographic refinement lost feasibility")
        fixed.append(r.x[j])
        unit = [Fraction(int(t == j)) for t in range(k)]
        pinned = pinned.with_row(unit, [Fraction(0)] * l, Fraction(fixed[-1]))
    if l:
        rhs_left = [
            r - sum(c * v for c, v in zip(x_row, fixed))
            for x_row, r in zip(prob.x_rows, prob.rhs)
        ]
        lp = RationalLP(tuple(prob.y_rows), tuple(rhs_left), tuple(prob.y_costs))
        rec = rational_simplex(lp)
        if rec.status is not Status.OPTIMAL:
            raise InvariantError("continuous recovery failed after refinement")
        y = rec.point
    else:
        y = ()
    value = sum(c * v for c, v in zip(prob.x_costs, fixed)) + sum(
        c * v for c, v in zip(prob.y_costs, y)
    )
    if value != res.value:
        raise InvariantError("refined solution changed the optimal value")
    return BnBResult(Status.OPTIMAL, tuple(int(v) for v in fixed), tuple(y), res.value)


def _dual_vertices(cols, costs):
    """Vertices of {u : u·col >= cost for every column}; empty list = no screening."""
    if not cols:
        return []
    m = len(cols[0])
    if len(cols) < m:
        return []
    vertices = []
    for subset in combinations(range(len(cols)), m):
        mat = [[Fraction(cols[j][i]) for i in range(m)] for j in subset]
        rhs = [Fraction(costs[j]) for j in subset]
        u = _solve_square(mat, rhs)
        if u is None:
            continue
        if all(
            sum(u[i] * cols[j][i] for i in range(m)) >= costs[j] for j in range(len(cols))
        ):
            vertices.append(tuple(u))
    return vertices


def _solve_square(mat, rhs):
    n = len(mat)
    aug = [row[:] + [r] for row, r in zip(mat, rhs)]
    for c in range(n):
        piv = next((i for i in range(c, n) if aug[i][c] != 0), None)
        if piv is None:
            return None
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = aug[c][c]
        aug[c] = [v / inv for v in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [v - f * w for v, w in zip(aug[i], aug[c])]
    return [aug[i][n] for i in range(n)]


def _zero_row_reduce(mip):
    """Drop trivial rows, apply gcd cuts to pure-integer rows.  None = infeasible."""
    rows_a, rows_b, rhs = [], [], []
    for i in range(mip.m):
        arow = mip.a.row(i)
        brow = mip.b_cols.row(i) if mip.b_cols is not None else ()
        if all(v == 0 for v in arow) and all(v == 0 for v in brow):
            if mip.b[i] != 0:
                return None
            continue
        if all(v == 0 for v in brow) and any(v != 0 for v in arow):
            norm = gcd_normalize_row(arow, mip.b[i], "equality")
            if norm is None:
                return None
            arow, bi = norm
        else:
            bi = mip.b[i]
        rows_a.append(tuple(arow))
        rows_b.append(tuple(brow))
        rhs.append(bi)
    return rows_a, rows_b, rhs


def solve_mixed(mip):
    """Exact optimum of a mixed program via the bounded/large decomposition.

    The objective of an OPTIMAL solution is an exact Fraction; ``x`` carries
    the integer part and ``y`` the continuous part.
    """
    reduced = _zero_row_reduce(mip)
    if reduced is None:
        return Solution(Status.INFEASIBLE)
    rows_a, rows_b, rhs = reduced
    n, l = mip.n, mip.l
    if not rows_a:
        j = next((j for j, cj in enumerate(mip.c) if cj > 0), None)
        if j is None:
            j = next((n + j for j, dj in enumerate(mip.d) if dj > 0), None)
        if j is None:
            return Solution(
                Status.OPTIMAL, x=(0,) * n, y=(Fraction(0),) * l, objective=Fraction(0)
            )
        cert = tuple(1 if t == j else 0 for t in range(n + l))
        return Solution(Status.UNBOUNDED, certificate=cert)

    a = IntMatrix(rows_a)
    b_cols = IntMatrix(rows_b) if l else None
    work = MixedIP(a, b_cols, tuple(rhs), mip.c, mip.d)
    m = work.m

    combined_cols = list(a.columns()) + (list(b_cols.columns()) if b_cols else [])
    combined = IntMatrix.from_columns(combined_cols)
    ray = improving_ray(combined, tuple(mip.c) + tuple(mip.d))

    delta = max(a.max_abs(), 1)
    var_bound = min(small_component_bound(m, delta), _kernel_norm_cap(a, m))
    radius = delta * n * var_bound
    table = build_rhs_table(a, work.c, var_bound, radius)
    vecs, vals = table.arrays()

    if ray is not None:
        if _any_candidate_feasible(work, table):
            return Solution(Status.UNBOUNDED, certificate=ray)
        return Solution(Status.INFEASIBLE)

    best = None  # (value, x, y)
    for subset in _independent_subsets(a, m):
        sub_cols = [a.col(j) for j in subset]
        screen_cols = sub_cols + (list(b_cols.columns()) if b_cols else [])
        screen_costs = [work.c[j] for j in subset] + list(work.d)
        vertices = _dual_vertices(screen_cols, screen_costs)
        order, bound_vals = _screen_order(work, vecs, vals, vertices)
        int_mat = IntMatrix.from_columns(sub_cols) if subset else None
        for idx in order:
            guard = 1e-6 * (1.0 + abs(float(best[0]))) if best is not None else 0.0
            if best is not None and bound_vals[idx] < float(best[0]) - guard:
                break
            bpp = tuple(int(v) for v in vecs[idx])
            r = tuple(bi - vi for bi, vi in zip(work.b, bpp))
            res = branch_and_bound(
                int_mat, b_cols, r, [work.c[j] for j in subset], work.d, lex_refine=False
            )
            if res.status is Status.UNBOUNDED:
                raise InvariantError("unbounded subproblem after ray check")
            if res.status is not Status.OPTIMAL:
                continue
            total = Fraction(int(vals[idx])) + res.value
            if best is not None and total < best[0]:
                continue
            g = table.assignment(bpp)
            x = list(g)
            for j, v in zip(subset, res.x):
                x[j] += v
            x = tuple(x)
            y = tuple(res.y)
            if best is None or total > best[0] or (total == best[0] and (x, y) < (best[1], best[2])):
                best = (total, x, y)
    if best is None:
        return Solution(Status.INFEASIBLE)
    value, x, y = best
    _recheck_mixed(work, x, y)
    return Solution(Status.OPTIMAL, x=x, objective=value, y=y)


def _screen_order(work, vecs, vals, vertices):
    """Candidate order (best upper bound first) and the float bounds."""
    t = vecs.shape[0]
    if t == 0:
        return [], np.empty(0)
    if not vertices:
        bounds = np.full(t, np.inf)
        order = list(np.argsort(-vals, kind="stable"))
        return order, vals.astype(float) + np.inf
    b_arr = np.array(work.b, dtype=np.int64)
    r = b_arr[None, :] - vecs
    u_mat = np.array([[float(v) for v in u] for u in vertices])
    dual = (r @ u_mat.T).min(axis=1)
    keys = vals.astype(float) + dual
    order = list(np.argsort(-keys, kind="stable"))
    return order, keys


def _any_candidate_feasible(work, table):
    vecs, _ = table.arrays()
    a = work.a
    b_cols = work.b_cols
    for subset in _independent_subsets(a, work.m):
        int_mat = IntMatrix.from_columns([a.col(j) for j in subset]) if subset else None
        for row in vecs.tolist():
            r = tuple(bi - vi for bi, vi in zip(work.b, row))
            res = branch_and_bound(
                int_mat,
                b_cols,
                r,
                [0] * len(subset),
                [0] * work.l,
                feasibility_only=True,
            )
            if res.status is Status.OPTIMAL:
                return True
    return False


def _recheck_mixed(work, x, y):
    for i in range(work.m):
        lhs = sum(work.a[i, j] * x[j] for j in range(work.n))
        lhs = Fraction(lhs) + sum(
            Fraction(work.b_cols[i, j]) * y[j] for j in range(work.l)
        )
        if lhs != work.b[i]:
            raise InvariantError("mixed solution failed exact re-substitution")
