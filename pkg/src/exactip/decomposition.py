"""Decomposition solver for standard-form IPs.

An optimal solution of ``max c·x : Ax = b, x >= 0 integer`` can always be
split into a part whose components stay below a bound depending only on the
row count m and the largest matrix entry, plus at most m large components
sitting on linearly independent columns.  The solver therefore builds one
right-hand-side value table for the bounded part and, for every candidate set
of at most m independent columns, closes the gap ``b - b''`` by an exact
unique solve.  Right-hand-side magnitude only enters through the unique
solves, so huge ``b`` costs nothing extra.

The table is built once over all columns.  A candidate assembled from it is
always feasible (the bounded assignment may happen to reuse candidate-set
columns; that only raises the value, never breaks feasibility), and the
classic decomposition witness is dominated by the same-``b''`` candidate, so
searching without per-candidate column masks is both sound and complete.

Unboundedness is decided by enumerating supports of at most m+1 columns: an
improving ray, when one exists, can be taken as an extreme ray of the
recession cone, whose support columns have corank exactly one, so checking
the primitive kernel generator of every such support is exhaustive.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .dp import (
    Solution,
    StandardIP,
    Status,
    build_rhs_table,
    small_component_bound,
)
from .linalg import (
    IntMatrix,
    adjugate,
    det,
    gcd_normalize_row,
    integer_kernel_vector,
    rank,
)

# Magnitude gates for the vectorised int64 candidate scan; anything beyond
# falls back to exact Python integers.
_B_GATE = 2**40
_C_GATE = 2**20
_R_GATE = 2**20


@dataclass(frozen=True)
class DecompositionWitness:
    """A solution split into a bounded part and large components.

    ``large_support`` indexes at most m linearly independent columns;
    ``bounded_part`` covers the remaining columns (in increasing column
    order) with entries within the small-component bound, ``large_part``
    covers ``large_support``.  ``b_small`` is the portion of b produced by
    the bounded part.
    """

    large_support: tuple
    b_small: tuple
    bounded_part: tuple
    large_part: tuple


def assemble_witness(witness, n):
    """Full-length x from a witness."""
    x = [0] * n
    support = set(witness.large_support)
    small = iter(witness.bounded_part)
    for j in range(n):
        if j not in support:
            x[j] = next(small)
    for j, v in zip(witness.large_support, witness.large_part):
        x[j] += v
    return tuple(x)


def verify_witness(ip, witness):
    """True iff every witness invariant holds and the assembled x is feasible."""
    n, m = ip.n, ip.m
    s_bar = witness.large_support
    if len(set(s_bar)) != len(s_bar) or any(j < 0 or j >= n for j in s_bar):
        return False
    if len(s_bar) > m:
        return False
    s = [j for j in range(n) if j not in set(s_bar)]
    if len(witness.bounded_part) != len(s) or len(witness.large_part) != len(s_bar):
        return False
    if len(witness.b_small) != m:
        return False
    bound = small_component_bound(m, max(ip.max_entry, 1))
    if any(v < 0 or v > bound for v in witness.bounded_part):
        return False
    if any(v < 0 for v in witness.large_part):
        return False
    if s_bar:
        cols = ip.a.select_cols(s_bar)
        if rank(cols) != len(s_bar):
            return False
        lhs = cols.mat_vec(witness.large_part)
        if any(l != bi - bs for l, bi, bs in zip(lhs, ip.b, witness.b_small)):
            return False
    elif tuple(witness.b_small) != tuple(ip.b):
        # No large part: b'' must carry all of b.
        return False
    if s:
        small_lhs = ip.a.select_cols(s).mat_vec(witness.bounded_part)
    else:
        small_lhs = (0,) * m
    if tuple(small_lhs) != tuple(witness.b_small):
        return False
    x = assemble_witness(witness, n)
    return ip.a.mat_vec(x) == tuple(ip.b)


def improving_ray(a, costs):
    """A ray d >= 0 with a·d = 0 and costs·d > 0, or None.

    Searches supports of size at most m+1; supports whose columns have
    corank one carry every extreme ray of {d >= 0 : a·d = 0}, so their
    primitive kernel generators are the only vectors that need checking.
    """
    n, m = a.cols, a.rows
    for size in range(1, min(n, m + 1) + 1):
        for subset in combinations(range(n), size):
            cols = a.select_cols(subset)
            r = rank(cols)
            if r != size - 1:
                continue
            g = integer_kernel_vector(cols)
            if g is None:
                continue
            if all(v <= 0 for v in g):
                g = tuple(-v for v in g)
            if any(v < 0 for v in g):
                continue
            gain = sum(costs[j] * v for j, v in zip(subset, g))
            if gain > 0:
                d = [0] * n
                for j, v in zip(subset, g):
                    d[j] = v
                return tuple(d)
    return None


def detect_unbounded(ip):
    """An improving ray for a standard-form instance, or None."""
    return improving_ray(ip.a, ip.c)


def _normalize_rows(ip):
    """gcd-normalize equality rows; drop zero rows.  None means infeasible."""
    rows, rhs = [], []
    for i in range(ip.m):
        row = ip.a.row(i)
        if all(v == 0 for v in row):
            if ip.b[i] != 0:
                return None
            continue
        norm = gcd_normalize_row(row, ip.b[i], "equality")
        if norm is None:
            return None
        rows.append(norm[0])
        rhs.append(norm[1])
    return rows, rhs


def _kernel_norm_cap(a, m):
    """Largest infinity-norm of a primitive kernel generator on <= m+1 columns.

    Every minimal column dependency has corank-one support of size at most
    m+1, so this is a valid (and usually much smaller) replacement for the
    worst-case small-component bound: any solution component beyond it can be
    traded away along such a generator without leaving the nonnegative
    orthant.  Zero means the columns have no dependencies at all.
    """
    n = a.cols
    cap = 0
    for size in range(1, min(n, m + 1) + 1):
        for subset in combinations(range(n), size):
            cols = a.select_cols(subset)
            if rank(cols) != size - 1:
                continue
            g = integer_kernel_vector(cols)
            if g is not None:
                cap = max(cap, max(abs(v) for v in g))
    return cap


def _row_basis(cols_matrix):
    """Indices of the first maximal independent row set of the given columns."""
    idx = []
    kept = []
    target = cols_matrix.cols
    for i in range(cols_matrix.rows):
        trial = kept + [cols_matrix.row(i)]
        if rank(IntMatrix(trial)) == len(trial):
            kept = trial
            idx.append(i)
            if len(idx) == target:
                break
    return idx


class _SubsetSolver:
    """Vectorised unique-solve of A_S̄ · y = b - b'' across all table entries."""

    def __init__(self, work, subset):
        self.subset = subset
        self.k = len(subset)
        self.c_sub = [work.c[j] for j in subset]
        if self.k == 0:
            return
        cols = work.a.select_cols(subset)
        self.basis = _row_basis(cols)
        block = cols.select_rows(self.basis)
        self.det = det(block)
        self.adj = adjugate(block)
        self.other = [i for i in range(work.m) if i not in self.basis]
        self.other_rows = [cols.row(i) for i in self.other]

    def scan_numpy(self, work, vecs, vals):
        b = np.array(work.b, dtype=np.int64)
        r = b[None, :] - vecs
        if self.k == 0:
            ok = (r == 0).all(axis=1)
            return np.where(ok, vals, np.int64(_NEG_SENTINEL))
        adj_t = np.array(self.adj.data, dtype=np.int64).T
        ys = r[:, self.basis] @ adj_t
        ok = (ys % self.det == 0).all(axis=1)
        sign = 1 if self.det > 0 else -1
        ok &= (sign * ys >= 0).all(axis=1)
        y_int = np.where(ok[:, None], ys // self.det, 0)
        for i, row in zip(self.other, self.other_rows):
            lhs = y_int @ np.array(row, dtype=np.int64)
            ok &= lhs == r[:, i]
        cand = vals + y_int @ np.array(self.c_sub, dtype=np.int64)
        return np.where(ok, cand, np.int64(_NEG_SENTINEL))

    def solve_one(self, work, bpp):
        """Exact per-entry solve; returns the y vector or None."""
        r = tuple(bi - vi for bi, vi in zip(work.b, bpp))
        if self.k == 0:
            return () if all(v == 0 for v in r) else None
        ys = [
            sum(self.adj[i, t] * r[self.basis[t]] for t in range(self.k))
            for i in range(self.k)
        ]
        if any(v % self.det != 0 for v in ys):
            return None
        y = tuple(v // self.det for v in ys)
        if any(v < 0 for v in y):
            return None
        for i, row in zip(self.other, self.other_rows):
            if sum(a * v for a, v in zip(row, y)) != r[i]:
                return None
        return y


_NEG_SENTINEL = -(2**62)


def _independent_subsets(a, m):
    n = a.cols
    yield ()
    for size in range(1, min(n, m) + 1):
        for subset in combinations(range(n), size):
            if rank(a.select_cols(subset)) == size:
                yield subset


def solve_standard(ip, with_witness=False):
    """Exact status and optimum of a standard-form IP.

    Rows are gcd-normalized first (divisibility failure is immediate
    infeasibility).  A value table over all columns with the instance's
    component bound feeds the candidate scan; if no candidate assembles the
    instance is infeasible, otherwise an improving-ray search decides between
    OPTIMAL and UNBOUNDED.  Ties are broken by the lexicographically
    smallest assembled solution vector.
    """
    norm = _normalize_rows(ip)
    if norm is None:
        sol = Solution(Status.INFEASIBLE)
        return (sol, None) if with_witness else sol
    rows, rhs = norm
    if not rows:
        # Every constraint was trivial: optimum at zero unless a cost is positive.
        j = next((j for j, cj in enumerate(ip.c) if cj > 0), None)
        if j is None:
            sol = Solution(Status.OPTIMAL, x=(0,) * ip.n, objective=0)
        else:
            d = tuple(1 if t == j else 0 for t in range(ip.n))
            sol = Solution(Status.UNBOUNDED, certificate=d)
        return (sol, None) if with_witness else sol

    work = StandardIP(IntMatrix(rows), tuple(rhs), ip.c)
    m, n = work.m, work.n
    delta = max(work.max_entry, 1)
    var_bound = min(small_component_bound(m, delta), _kernel_norm_cap(work.a, m))
    radius = delta * n * var_bound
    table = build_rhs_table(work.a, work.c, var_bound, radius)

    solvers = [_SubsetSolver(work, s) for s in _independent_subsets(work.a, m)]
    vecs, vals = table.arrays()
    use_numpy = (
        vecs.shape[0] > 0
        and max(abs(v) for v in work.b) <= _B_GATE
        and max((abs(v) for v in work.c), default=0) <= _C_GATE
        and radius <= _R_GATE
    )

    best = None
    per_subset = []
    if use_numpy:
        for solver in solvers:
            cand = solver.scan_numpy(work, vecs, vals)
            top = int(cand.max()) if cand.size else _NEG_SENTINEL
            per_subset.append(top)
            if top > _NEG_SENTINEL and (best is None or top > best):
                best = top
    else:
        entries = list(table.items())
        for solver in solvers:
            top = _NEG_SENTINEL
            for bpp, val in entries:
                y = solver.solve_one(work, bpp)
                if y is None:
                    continue
                total = val + sum(c * v for c, v in zip(solver.c_sub, y))
                top = max(top, total)
            per_subset.append(top)
            if top > _NEG_SENTINEL and (best is None or top > best):
                best = top

    if best is None:
        sol = Solution(Status.INFEASIBLE)
        return (sol, None) if with_witness else sol

    ray = detect_unbounded(work)
    if ray is not None:
        sol = Solution(Status.UNBOUNDED, certificate=ray)
        return (sol, None) if with_witness else sol

    # Second pass: materialize every candidate attaining the best value and
    # keep the lexicographically smallest assembled solution.
    best_x = None
    best_witness = None
    for solver, top in zip(solvers, per_subset):
        if top != best:
            continue
        if use_numpy:
            cand = solver.scan_numpy(work, vecs, vals)
            hits = np.nonzero(cand == best)[0]
            targets = [tuple(int(v) for v in vecs[i]) for i in hits]
        else:
            targets = []
            for bpp, val in table.items():
                y = solver.solve_one(work, bpp)
                if y is None:
                    continue
                if val + sum(c * v for c, v in zip(solver.c_sub, y)) == best:
                    targets.append(bpp)
        for bpp in targets:
            y = solver.solve_one(work, bpp)
            if y is None:
                continue
            g = table.assignment(bpp)
            x = list(g)
            for j, v in zip(solver.subset, y):
                x[j] += v
            x = tuple(x)
            if best_x is None or x < best_x:
                best_x = x
                # Witness bookkeeping is expressed against the original
                # instance; row normalization does not change solutions.
                best_witness = _reshape_witness(ip, solver.subset, g, y)

    assert best_x is not None
    if work.a.mat_vec(best_x) != tuple(work.b):
        raise AssertionError("assembled solution failed re-substitution")
    sol = Solution(Status.OPTIMAL, x=best_x, objective=best)
    return (sol, best_witness) if with_witness else sol


def _reshape_witness(ip, subset, assignment, y):
    """Fold bounded-assignment mass on subset columns into the large part."""
    support = set(subset)
    b_small = tuple(
        sum(ip.a[i, j] * assignment[j] for j in range(ip.n) if j not in support)
        for i in range(ip.m)
    )
    bounded = tuple(assignment[j] for j in range(ip.n) if j not in support)
    large = tuple(assignment[j] + v for j, v in zip(subset, y))
    return DecompositionWitness(tuple(subset), b_small, bounded, large)
