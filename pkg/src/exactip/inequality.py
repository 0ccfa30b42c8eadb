"""Reduction of inequality-form IPs to standard form via the Hermite normal form.

For ``max c·x : Ax <= b, x integer`` with full column rank, no singular
maximal square submatrix and all maximal subdeterminants bounded by a
declared ``delta``, a unimodular change of variables turns most constraint
rows into single-variable bounds.  Those bounds are absorbed by per-variable
shifts (with a sign flip, so the new variable is nonnegative), the few
remaining dense rows become a small equality system over shifted, split and
slack variables, and that system is handed to the standard-form solver.  The
whole transform is recorded in a `TransformTrace` so solutions and
certificates can be mapped back and re-verified exactly in the original
space.

The module also exposes the two growth bounds that justify the reduction:
`transformed_entry_bound` caps every entry of the transformed matrix purely
in terms of ``delta``, and `row_count_threshold` gives the dimension beyond
which such instances cannot have more than n+1 rows at all.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

from .decomposition import solve_standard
from .dp import Solution, StandardIP, Status
from .errors import InvariantError, PipelinePreconditionError
from .linalg import IntMatrix, det, gcd_normalize_row, hnf, rank, subdet_scan


@dataclass(frozen=True)
class InequalityIP:
    """max c·x subject to A·x <= b, x integer (free sign)."""

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


@dataclass(frozen=True)
class AnalysisReport:
    rank: int
    delta_max: int
    has_singular_submatrix: bool
    k: int
    entry_bound_ok: bool
    row_count_ok: bool


@dataclass(frozen=True)
class TransformTrace:
    """Everything needed to map standard-form answers back to the original space."""

    row_permutation: tuple
    unimodular_u: IntMatrix
    column_permutation: tuple
    shifts: tuple  # per transformed variable: (offset, flip) or None when split
    bound_cols: dict
    split_map: dict  # transformed variable -> (plus column, minus column)
    slack_count: int
    objective_offset: int
    instance: InequalityIP


def _ceil_log2(delta):
    return (delta - 1).bit_length()


def _hadamard_factor(delta):
    """ceil of delta^log2(delta) · log2(delta)^(log2(delta)/2).

    Exact for powers of two (integer square root of an integer square);
    otherwise the factor is irrational and double precision decides the
    ceiling, which over-approximates as required.
    """
    if delta & (delta - 1) == 0:
        e = delta.bit_length() - 1
        squared = delta ** (2 * e) * e**e
        s = math.isqrt(squared)
        return s if s * s == squared else s + 1
    x = math.log2(delta)
    return math.ceil(delta**x * x ** (x / 2))


def transformed_entry_bound(delta):
    """Entry growth bound for the transformed matrix, as a function of delta.

    Evaluates the recurrence B_0 = delta, B_i = delta + (B_0+..+B_{i-1})·F
    with F the Hadamard factor, for ceil(log2 delta) steps.
    """
    if delta < 1:
        raise ValueError("delta must be >= 1")
    q = _ceil_log2(delta)
    if q == 0:
        return delta
    factor = _hadamard_factor(delta)
    seq = [delta]
    for _ in range(q):
        seq.append(delta + sum(seq) * factor)
    return seq[q]


def row_count_threshold(delta):
    """Dimension beyond which a valid instance has at most n+1 rows."""
    if delta < 1:
        raise ValueError("delta must be >= 1")
    q = _ceil_log2(delta)
    c = transformed_entry_bound(delta)
    return (2 * c + 1) ** (q + 3) + q


def _normalize_rows(ip):
    """gcd-normalize inequality rows, dropping trivial ones.  None = infeasible."""
    rows, rhs = [], []
    for i in range(ip.m):
        row = ip.a.row(i)
        if all(v == 0 for v in row):
            if ip.b[i] < 0:
                return None
            continue
        new_row, new_rhs = gcd_normalize_row(row, ip.b[i], "inequality")
        rows.append(new_row)
        rhs.append(new_rhs)
    return rows, rhs


def _top_block_order(a):
    """Row order with a nonsingular leading block: first rows if possible,
    otherwise the lexicographically first nonsingular row subset."""
    n = a.cols
    if det(a.select_rows(tuple(range(n)))) != 0:
        block = tuple(range(n))
    else:
        block = next(
            (
                rows
                for rows in combinations(range(a.rows), n)
                if det(a.select_rows(rows)) != 0
            ),
            None,
        )
        if block is None:
            raise PipelinePreconditionError("rank below column count")
    rest = tuple(i for i in range(a.rows) if i not in set(block))
    return block + rest


def analyze(ip, delta):
    """Pipeline precondition report; failures are flags, never exceptions."""
    norm = _normalize_rows(ip)
    if norm is None or not norm[0]:
        return AnalysisReport(0, 0, True, 0, False, False)
    a = IntMatrix(norm[0])
    m, n = a.rows, a.cols
    row_ok = m <= n + 1 or n <= row_count_threshold(delta)
    if m < n:
        return AnalysisReport(rank(a), 0, True, 0, False, row_ok)
    report = subdet_scan(a)
    if report.rank < n:
        return AnalysisReport(report.rank, report.delta_max, report.has_singular_square_submatrix, 0, False, row_ok)
    order = _top_block_order(a)
    res = hnf(a.select_rows(order[:n]))
    transformed = a.select_rows(order).mul(res.u)
    k = sum(1 for i in range(n) if res.h[i, i] > 1)
    bound = transformed_entry_bound(delta)
    entry_ok = all(
        abs(transformed[i, j]) <= bound for i in range(m) for j in range(n)
    )
    return AnalysisReport(report.rank, report.delta_max, report.has_singular_square_submatrix, k, entry_ok, row_ok)


def _precondition_failures(report, n, delta):
    failed = []
    if report.rank != n:
        failed.append("rank")
    if report.has_singular_submatrix:
        failed.append("singular-submatrix")
    if report.delta_max > delta:
        failed.append("delta-max")
    if not report.entry_bound_ok:
        failed.append("entry-bound")
    if not report.row_count_ok:
        failed.append("row-count")
    return failed


def _unit_row(row):
    nz = [(j, v) for j, v in enumerate(row) if v != 0]
    if len(nz) == 1 and abs(nz[0][1]) == 1:
        return nz[0]
    return None


def to_standard_form(ip, delta):
    """Equality-form reformulation with full transform bookkeeping.

    Unit rows (single entry, value +-1 after the unimodular transform)
    become per-variable shifts; everything else lands in the dense system,
    over shifted variables, +-split free variables, and one slack per dense
    row.  Raises PipelinePreconditionError naming the first violated flag.
    """
    norm = _normalize_rows(ip)
    if norm is None:
        raise PipelinePreconditionError("constant row is infeasible")
    if not norm[0]:
        raise PipelinePreconditionError("rank")
    report = analyze(ip, delta)
    failed = _precondition_failures(report, ip.n, delta)
    if failed:
        raise PipelinePreconditionError(f"precondition failed: {failed[0]}")
    a = IntMatrix(norm[0])
    b = list(norm[1])
    m, n = a.rows, a.cols

    order = _top_block_order(a)
    res = hnf(a.select_rows(order[:n]))
    u = res.u
    t = a.select_rows(order).mul(u)
    b_perm = [b[i] for i in order]
    c_new = u.transpose().mat_vec(ip.c)

    shifts = [None] * n
    dense_rows, dense_rhs = [], []
    for i in range(m):
        row = t.row(i)
        unit = _unit_row(row)
        if unit is not None and shifts[unit[0]] is None:
            j, sign = unit
            if sign > 0:
                shifts[j] = (b_perm[i], -1)  # x_j <= b: substitute x_j = b - y_j
            else:
                shifts[j] = (-b_perm[i], 1)  # -x_j <= b: substitute x_j = -b + y_j
        else:
            dense_rows.append(row)
            dense_rhs.append(b_perm[i])

    bound_vars = [j for j in range(n) if shifts[j] is not None]
    free_vars = [j for j in range(n) if shifts[j] is None]
    bound_col = {j: idx for idx, j in enumerate(bound_vars)}
    plus_col = {j: len(bound_vars) + idx for idx, j in enumerate(free_vars)}
    minus_col = {j: len(bound_vars) + len(free_vars) + idx for idx, j in enumerate(free_vars)}
    slack_base = len(bound_vars) + 2 * len(free_vars)
    n_std = slack_base + len(dense_rows)

    rows_std, rhs_std = [], []
    for r_idx, (row, bi) in enumerate(zip(dense_rows, dense_rhs)):
        out = [0] * n_std
        rhs_val = bi
        for j in range(n):
            coeff = row[j]
            if coeff == 0:
                continue
            if shifts[j] is not None:
                off, flip = shifts[j]
                rhs_val -= coeff * off
                out[bound_col[j]] += coeff * flip
            else:
                out[plus_col[j]] += coeff
                out[minus_col[j]] -= coeff
        out[slack_base + r_idx] = 1
        rows_std.append(out)
        rhs_std.append(rhs_val)

    c_std = [0] * n_std
    offset = 0
    for j in range(n):
        cj = c_new[j]
        if shifts[j] is not None:
            off, flip = shifts[j]
            offset += cj * off
            c_std[bound_col[j]] += cj * flip
        else:
            c_std[plus_col[j]] += cj
            c_std[minus_col[j]] -= cj

    if not rows_std:
        # All rows were absorbed as bounds: keep a trivial equality so the
        # standard form stays well-shaped.
        rows_std = [[0] * n_std]
        rhs_std = [0]

    std = StandardIP(IntMatrix(rows_std), tuple(rhs_std), tuple(c_std))
    trace = TransformTrace(
        row_permutation=tuple(order),
        unimodular_u=u,
        column_permutation=tuple(range(n)),
        shifts=tuple(shifts),
        bound_cols=bound_col,
        split_map={j: (plus_col[j], minus_col[j]) for j in free_vars},
        slack_count=len(dense_rows),
        objective_offset=offset,
        instance=ip,
    )
    return std, trace


def _linear_part(vec, trace):
    """Transformed-variable vector from a standard-space vector (no offsets)."""
    n = len(trace.shifts)
    out = [0] * n
    for j in range(n):
        if trace.shifts[j] is not None:
            out[j] = trace.shifts[j][1] * vec[trace.bound_cols[j]]
        else:
            plus, minus = trace.split_map[j]
            out[j] = vec[plus] - vec[minus]
    return out


def back_map(sol, trace):
    """Map a standard-form solution back to the original inequality space.

    OPTIMAL points are rebuilt through the recorded shifts, splits and the
    unimodular transform, then re-verified against the original instance;
    any mismatch raises InvariantError rather than being returned.
    UNBOUNDED certificates are mapped through the linear part of the
    transform; INFEASIBLE passes through untouched.
    """
    inst = trace.instance
    if sol.status is Status.INFEASIBLE:
        return sol
    if sol.status is Status.UNBOUNDED:
        if sol.certificate is None:
            return sol
        ray_new = _linear_part(sol.certificate, trace)
        ray = trace.unimodular_u.mat_vec(ray_new)
        lhs = inst.a.mat_vec(ray)
        gain = sum(ci * ri for ci, ri in zip(inst.c, ray))
        if all(v == 0 for v in ray) or any(v > 0 for v in lhs) or gain <= 0:
            raise InvariantError("mapped ray is not an improving recession direction")
        return Solution(Status.UNBOUNDED, certificate=tuple(ray))

    x_new = _linear_part(sol.x, trace)
    for j in range(len(x_new)):
        if trace.shifts[j] is not None:
            x_new[j] += trace.shifts[j][0]
    x = trace.unimodular_u.mat_vec(x_new)
    lhs = inst.a.mat_vec(x)
    if any(l > bi for l, bi in zip(lhs, inst.b)):
        raise InvariantError("back-mapped point violates the original constraints")
    objective = sum(ci * xi for ci, xi in zip(inst.c, x))
    if sol.objective + trace.objective_offset != objective:
        raise InvariantError("objective accounting failed in back-mapping")
    return Solution(Status.OPTIMAL, x=tuple(x), objective=objective)


def solve_inequality(ip, delta):
    """analyze -> to_standard_form -> solve_standard -> back_map."""
    norm = _normalize_rows(ip)
    if norm is None:
        return Solution(Status.INFEASIBLE)
    std, trace = to_standard_form(ip, delta)
    return back_map(solve_standard(std), trace)
