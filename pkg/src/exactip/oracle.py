"""Exhaustive oracles and a seeded instance generator.

The brute solvers enumerate a stated box completely (depth-first with exact
interval pruning, which discards only provably infeasible subtrees) and are
the ground truth for every equivalence test.  They cannot certify
unboundedness; their OPTIMAL answers carry ``boxed=True`` to say "exact
within the box".  The generator is purely rejection-sampling driven and
deterministic per seed.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .dp import Solution, StandardIP, Status
from .errors import GenerationExhausted
from .inequality import InequalityIP
from .linalg import IntMatrix, det, gcd_normalize_row, subdet_scan
from .mixed import MixedIP
from .simplex import RationalLP, rational_simplex


@dataclass(frozen=True)
class GenSpec:
    """Deterministic recipe for one random instance.

    ``bounded_objective`` draws the inequality-form objective as a
    nonnegative combination of constraint rows, which makes the maximum
    provably finite; otherwise objectives are uniform and unbounded
    instances are common.
    """

    form: str  # "standard" | "inequality" | "mixed"
    n: int
    m: int
    delta: int
    seed: int
    l: int = 0
    rhs_bound: int = 10
    cost_bound: int = 5
    bounded_objective: bool = False
    attempt_cap: int = 100_000


@dataclass(frozen=True)
class GenResult:
    instance: object
    attempts: int


def brute_standard(ip, box, collect_optima=False):
    """Exact optimum of a standard-form IP over 0 <= x_j <= box.

    Enumeration is depth-first; a branch is cut only when some equality row
    can no longer be met by any completion within the box.  Columns that are
    all zero are fixed directly at their best value.  With
    ``collect_optima`` also returns every optimal point found.
    """
    if box < 0:
        raise ValueError("box must be >= 0")
    n, m = ip.n, ip.m
    cols = ip.a.columns()
    zero_cols = [j for j in range(n) if all(v == 0 for v in cols[j])]
    live = [j for j in range(n) if j not in zero_cols]
    zero_gain = sum(max(0, ip.c[j]) * box for j in zero_cols)

    # Per-depth bounds on what the remaining live columns can still add.
    lo = [[0] * m for _ in range(len(live) + 1)]
    hi = [[0] * m for _ in range(len(live) + 1)]
    for idx in range(len(live) - 1, -1, -1):
        col = cols[live[idx]]
        for i in range(m):
            lo[idx][i] = lo[idx + 1][i] + min(0, col[i]) * box
            hi[idx][i] = hi[idx + 1][i] + max(0, col[i]) * box
    best = None
    best_x = None
    optima = []

    def rec(idx, partial, value, chosen):
        nonlocal best, best_x, optima
        for i in range(m):
            need = ip.b[i] - partial[i]
            if need < lo[idx][i] or need > hi[idx][i]:
                return
        if idx == len(live):
            total = value + zero_gain
            x = [0] * n
            for j, v in zip(live, chosen):
                x[j] = v
            for j in zero_cols:
                x[j] = box if ip.c[j] > 0 else 0
            x = tuple(x)
            if best is None or total > best:
                best, best_x = total, x
                if collect_optima:
                    optima = [x]
            elif collect_optima and total == best:
                optima.append(x)
            return
        j = live[idx]
        col = cols[j]
        for t in range(box + 1):
            rec(
                idx + 1,
                [p + t * col[i] for i, p in enumerate(partial)],
                value + t * ip.c[j],
                chosen + [t],
            )

    rec(0, [0] * m, 0, [])
    if best is None:
        sol = Solution(Status.INFEASIBLE, boxed=True)
    else:
        sol = Solution(Status.OPTIMAL, x=best_x, objective=best, boxed=True)
    return (sol, optima) if collect_optima else sol


def brute_inequality(ip, box, collect_optima=False):
    """Exact optimum of an inequality-form IP over a signed box.

    ``box`` is either one inclusive (low, high) pair applied to every
    variable or a sequence of per-variable pairs.
    """
    n, m = ip.n, ip.m
    if isinstance(box[0], (list, tuple)):
        ranges = [tuple(r) for r in box]
        if len(ranges) != n:
            raise ValueError("need one range per variable")
    else:
        ranges = [tuple(box)] * n
    if any(lo > hi for lo, hi in ranges):
        raise ValueError("empty box")
    cols = ip.a.columns()
    lo = [[0] * m for _ in range(n + 1)]
    for idx in range(n - 1, -1, -1):
        col = cols[idx]
        low, high = ranges[idx]
        for i in range(m):
            lo[idx][i] = lo[idx + 1][i] + min(col[i] * low, col[i] * high)
    best = None
    best_x = None
    optima = []

    def rec(idx, partial, value, chosen):
        nonlocal best, best_x, optima
        for i in range(m):
            if partial[i] + lo[idx][i] > ip.b[i]:
                return
        if idx == n:
            if best is None or value > best:
                best, best_x = value, tuple(chosen)
                if collect_optima:
                    optima = [best_x]
            elif collect_optima and value == best:
                optima.append(tuple(chosen))
            return
        col = cols[idx]
        for t in range(ranges[idx][0], ranges[idx][1] + 1):
            rec(
                idx + 1,
                [p + t * col[i] for i, p in enumerate(partial)],
                value + t * ip.c[idx],
                chosen + [t],
            )

    rec(0, [0] * m, 0, [])
    if best is None:
        sol = Solution(Status.INFEASIBLE, boxed=True)
    else:
        sol = Solution(Status.OPTIMAL, x=best_x, objective=best, boxed=True)
    return (sol, optima) if collect_optima else sol


def brute_mixed(mip, box):
    """Enumerate integer parts in 0 <= x_j <= box, exact LP for each.

    Can genuinely certify unboundedness when some in-box x leaves the
    continuous part unbounded.
    """
    if box < 0:
        raise ValueError("box must be >= 0")
    n, m, l = mip.n, mip.m, mip.l
    cols = mip.a.columns()
    pure = [
        i
        for i in range(m)
        if mip.b_cols is None or all(v == 0 for v in mip.b_cols.row(i))
    ]
    lo = [[0] * m for _ in range(n + 1)]
    hi = [[0] * m for _ in range(n + 1)]
    for idx in range(n - 1, -1, -1):
        col = cols[idx]
        for i in range(m):
            lo[idx][i] = lo[idx + 1][i] + min(0, col[i]) * box
            hi[idx][i] = hi[idx + 1][i] + max(0, col[i]) * box
    best = None  # (value, x, y)
    ray_found = [None]

    def rec(idx, partial, chosen):
        nonlocal best
        if ray_found[0] is not None:
            return
        for i in pure:
            need = mip.b[i] - partial[i]
            if need < lo[idx][i] or need > hi[idx][i]:
                return
        if idx == n:
            rhs = [mip.b[i] - partial[i] for i in range(m)]
            if l == 0:
                if any(v != 0 for v in rhs):
                    return
                value = Fraction(sum(c * t for c, t in zip(mip.c, chosen)))
                cand = (value, tuple(chosen), ())
            else:
                lp = RationalLP(
                    tuple(tuple(Fraction(mip.b_cols[i, j]) for j in range(l)) for i in range(m)),
                    tuple(Fraction(v) for v in rhs),
                    tuple(Fraction(v) for v in mip.d),
                )
                res = rational_simplex(lp)
                if res.status is Status.INFEASIBLE:
                    return
                if res.status is Status.UNBOUNDED:
                    ray_found[0] = (tuple(chosen), res.ray)
                    return
                value = Fraction(sum(c * t for c, t in zip(mip.c, chosen))) + res.value
                cand = (value, tuple(chosen), res.point)
            if best is None or cand[0] > best[0] or (cand[0] == best[0] and cand[1:] < best[1:]):
                best = cand
            return
        col = cols[idx]
        for t in range(box + 1):
            rec(idx + 1, [p + t * col[i] for i, p in enumerate(partial)], chosen + [t])

    rec(0, [0] * m, [])
    if ray_found[0] is not None:
        _, ray = ray_found[0]
        scale = math.lcm(*(v.denominator for v in ray))
        cert = tuple([0] * n + [int(v * scale) for v in ray])
        return Solution(Status.UNBOUNDED, certificate=cert, boxed=True)
    if best is None:
        return Solution(Status.INFEASIBLE, boxed=True)
    value, x, y = best
    return Solution(Status.OPTIMAL, x=x, objective=value, y=y, boxed=True)


def vertex_box(ip, margin=1):
    """Signed box containing all basic points of A·x <= b (hence every vertex)."""
    lo, hi = None, None
    for point in _basic_points(ip):
        mn, mx = min(point), max(point)
        lo = mn if lo is None or mn < lo else lo
        hi = mx if hi is None or mx > hi else hi
    if lo is None:
        return (-margin, margin)
    return (math.floor(lo) - margin, math.ceil(hi) + margin)


def coordinate_boxes(ip, margin=1):
    """Per-variable (low, high) ranges covering all basic points of A·x <= b."""
    n = ip.n
    lo = [None] * n
    hi = [None] * n
    for point in _basic_points(ip):
        for j, v in enumerate(point):
            lo[j] = v if lo[j] is None or v < lo[j] else lo[j]
            hi[j] = v if hi[j] is None or v > hi[j] else hi[j]
    if any(v is None for v in lo):
        return [(-margin, margin)] * n
    return [
        (math.floor(a) - margin, math.ceil(b) + margin) for a, b in zip(lo, hi)
    ]


def _basic_points(ip):
    n = ip.n
    for rows in combinations(range(ip.m), n):
        block = ip.a.select_rows(rows)
        if det(block) == 0:
            continue
        yield _solve_fraction(block, [ip.b[i] for i in rows])


def _solve_fraction(block, rhs):
    n = block.rows
    aug = [[Fraction(v) for v in block.row(i)] + [Fraction(rhs[i])] for i in range(n)]
    for c in range(n):
        piv = next(i for i in range(c, n) if aug[i][c] != 0)
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = aug[c][c]
        aug[c] = [v / inv for v in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [v - f * w for v, w in zip(aug[i], aug[c])]
    return [aug[i][n] for i in range(n)]


def _random_row(rng, n, delta):
    while True:
        row = [rng.randint(-delta, delta) for _ in range(n)]
        if any(v != 0 for v in row):
            return list(gcd_normalize_row(row, 0, "equality")[0])


def generate(spec):
    """Deterministic instance for a GenSpec, by rejection sampling.

    Inequality-form candidates are rejected until they pass the pipeline
    preconditions (full rank, no singular maximal submatrix, subdeterminants
    within the requested delta).  Raises GenerationExhausted at the cap.
    """
    rng = random.Random(spec.seed)
    if spec.form == "standard":
        return _generate_standard(spec, rng)
    if spec.form == "mixed":
        return _generate_mixed(spec, rng)
    if spec.form == "inequality":
        return _generate_inequality(spec, rng)
    raise ValueError(f"unknown form {spec.form!r}")


def _generate_standard(spec, rng):
    for attempt in range(1, spec.attempt_cap + 1):
        rows = [_random_row(rng, spec.n, spec.delta) for _ in range(spec.m)]
        a = IntMatrix(rows)
        if a.max_abs() != spec.delta:
            continue
        b = tuple(rng.randint(-spec.rhs_bound, spec.rhs_bound) for _ in range(spec.m))
        c = tuple(rng.randint(-spec.cost_bound, spec.cost_bound) for _ in range(spec.n))
        return GenResult(StandardIP(a, b, c), attempt)
    raise GenerationExhausted(f"no acceptable standard instance in {spec.attempt_cap} attempts")


def _generate_mixed(spec, rng):
    for attempt in range(1, spec.attempt_cap + 1):
        rows = [_random_row(rng, spec.n, spec.delta) for _ in range(spec.m)]
        a = IntMatrix(rows)
        if a.max_abs() != spec.delta:
            continue
        if spec.l:
            b_cols = IntMatrix(
                [[rng.randint(-spec.delta, spec.delta) for _ in range(spec.l)] for _ in range(spec.m)]
            )
            d = tuple(rng.randint(-spec.cost_bound, spec.cost_bound) for _ in range(spec.l))
        else:
            b_cols, d = None, ()
        b = tuple(rng.randint(-spec.rhs_bound, spec.rhs_bound) for _ in range(spec.m))
        c = tuple(rng.randint(-spec.cost_bound, spec.cost_bound) for _ in range(spec.n))
        return GenResult(MixedIP(a, b_cols, b, c, d), attempt)
    raise GenerationExhausted(f"no acceptable mixed instance in {spec.attempt_cap} attempts")


def _candidate_matrix(rng, n, m, delta):
    """A square unimodular-ish block (random unit column ops on I) plus extra rows."""
    block = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    ops = rng.randint(n, 3 * n)
    for _ in range(ops):
        src = rng.randrange(n)
        dst = rng.randrange(n)
        if src == dst:
            continue
        f = rng.choice((-1, 1))
        for row in block:
            row[dst] += f * row[src]
    if delta > 1:
        # Push one subdeterminant above 1 by scaling a random row.
        i = rng.randrange(n)
        f = rng.randint(2, delta)
        block[i] = [f * v for v in block[i]]
    extra = [[rng.randint(-1, 1) for _ in range(n)] for _ in range(m - n)]
    rows = block + extra
    rng.shuffle(rows)
    return rows


def _generate_inequality(spec, rng):
    if spec.m < spec.n:
        raise ValueError("inequality generation needs m >= n")
    for attempt in range(1, spec.attempt_cap + 1):
        rows = _candidate_matrix(rng, spec.n, spec.m, spec.delta)
        if any(all(v == 0 for v in row) for row in rows):
            continue
        rows = [list(gcd_normalize_row(row, 0, "equality")[0]) for row in rows]
        a = IntMatrix(rows)
        report = subdet_scan(a) if a.rows >= a.cols else None
        if report is None or report.rank != spec.n:
            continue
        if report.has_singular_square_submatrix or report.delta_max > spec.delta:
            continue
        interior = [rng.randint(-2, 2) for _ in range(spec.n)]
        slack = [rng.randint(0, spec.rhs_bound) for _ in range(spec.m)]
        b = tuple(v + s for v, s in zip(a.mat_vec(interior), slack))
        if spec.bounded_objective:
            lam = [rng.randint(0, 2) for _ in range(spec.m)]
            c = tuple(
                sum(lam[i] * a[i, j] for i in range(spec.m)) for j in range(spec.n)
            )
            if all(v == 0 for v in c):
                continue
        else:
            c = tuple(rng.randint(-spec.cost_bound, spec.cost_bound) for _ in range(spec.n))
        return GenResult(InequalityIP(a, b, c), attempt)
    raise GenerationExhausted(f"no acceptable inequality instance in {spec.attempt_cap} attempts")
